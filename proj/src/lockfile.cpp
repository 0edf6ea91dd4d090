#include "vfield/lockfile.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "vfield/errors.hpp"

namespace vfield {

CatalogLock::CatalogLock(const std::filesystem::path& root) {
    const std::filesystem::path lock_path = root / "catalog.lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) {
        throw LockError("cannot open lock file " + lock_path.string() + ": " +
                        std::strerror(errno));
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        const int err = errno;
        ::close(fd_);
        fd_ = -1;
        if (err == EWOULDBLOCK) {
            throw LockError("catalog at " + root.string() +
                            " is locked by another process; try again later");
        }
        throw LockError("cannot lock " + lock_path.string() + ": " + std::strerror(err));
    }
}

CatalogLock::~CatalogLock() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

CatalogLock::CatalogLock(CatalogLock&& other) noexcept : fd_(other.fd_) {
    other.fd_ = -1;
}

}  // namespace vfield
