#include "vfield/blob_store.hpp"

#include <fstream>
#include <system_error>
#include <utility>

#include "vfield/errors.hpp"
#include "vfield/sha256.hpp"

namespace fs = std::filesystem;

namespace vfield {

BlobStore::BlobStore(fs::path root) : root_(std::move(root)) {}

std::string BlobStore::ref_for(std::string_view digest) {
    std::string ref = "blobs/";
    ref.append(digest.substr(0, 2));
    ref.push_back('/');
    ref.append(digest);
    return ref;
}

fs::path BlobStore::path_for(std::string_view digest) const {
    return root_ / "blobs" / std::string(digest.substr(0, 2)) / std::string(digest);
}

bool BlobStore::exists(std::string_view digest) const {
    std::error_code ec;
    return fs::is_regular_file(path_for(digest), ec);
}

void BlobStore::write(std::string_view digest, std::string_view bytes) const {
    const fs::path target = path_for(digest);
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
        throw IoError("cannot create blob directory " + target.parent_path().string() + ": " +
                      ec.message());
    }
    const fs::path tmp = target.parent_path() / (".tmp-" + std::string(digest));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open blob temp file " + tmp.string());
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp, ec);
            throw IoError("cannot write blob " + target.string());
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot finalize blob " + target.string() + ": " + ec.message());
    }
}

std::string BlobStore::read(std::string_view digest) const {
    const fs::path path = path_for(digest);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorruptionError("blob missing for digest " + std::string(digest));
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("cannot read blob " + path.string());
    }
    return bytes;
}

void BlobStore::remove(std::string_view digest) const {
    std::error_code ec;
    fs::remove(path_for(digest), ec);
}

}  // namespace vfield
