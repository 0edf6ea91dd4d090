#pragma once

#include <stdexcept>
#include <string>

namespace vfield {

// Base for all catalog errors. The CLI maps any Error to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A name or label fails the syntactic rules (empty, contains '/', bad UTF-8).
class NameError : public Error {
public:
    using Error::Error;
};

// An attribute value or other argument fails validation.
class ValueError : public Error {
public:
    using Error::Error;
};

// Lookup target does not exist: file id, section, tree, attribute, path.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// A name is already taken, or an argument list contains a repeat.
class DuplicateError : public Error {
public:
    using Error::Error;
};

// The file is not a member of the required section, or already belongs to
// another one.
class MembershipError : public Error {
public:
    using Error::Error;
};

// The file is already placed somewhere in the same tree.
class PlacementError : public Error {
public:
    using Error::Error;
};

// The target still holds content or is still referenced.
class InUseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Stored content is missing or does not match its recorded digest.
class CorruptionError : public Error {
public:
    using Error::Error;
};

// A catalog document failed parsing or invariant validation.
class LoadError : public Error {
public:
    using Error::Error;
};

// Another process holds the catalog lock.
class LockError : public Error {
public:
    using Error::Error;
};

}  // namespace vfield
