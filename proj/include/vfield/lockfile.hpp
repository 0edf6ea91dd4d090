#pragma once

#include <filesystem>

namespace vfield {

// Exclusive per-catalog lock on <root>/catalog.lock via flock(2): fails fast
// when another process holds it, releases automatically on process death.
class CatalogLock {
public:
    explicit CatalogLock(const std::filesystem::path& root);
    ~CatalogLock();

    CatalogLock(const CatalogLock&) = delete;
    CatalogLock& operator=(const CatalogLock&) = delete;
    CatalogLock(CatalogLock&& other) noexcept;
    CatalogLock& operator=(CatalogLock&&) = delete;

private:
    int fd_ = -1;
};

}  // namespace vfield
