#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "georeport/core/digest.hpp"
#include "georeport/core/json_io.hpp"
#include "georeport/core/validate.hpp"

namespace georeport::store {

namespace fs = std::filesystem;

namespace store_detail {

inline std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_all(int fd, std::string_view data, const fs::path &p) {
    while (!data.empty()) {
        ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw Error("write " + p.string() + ": " + std::strerror(errno));
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

// Writes a sibling temp file, fsyncs it and renames it over the target, so a
// reader sees either the old document or the new one.
inline void atomic_write(const fs::path &target, std::string_view data) {
    static std::atomic<unsigned> counter{0};
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw Error("open " + tmp.string() + ": " + std::strerror(errno));
    try {
        write_all(fd, data, tmp);
        if (::fsync(fd) != 0) throw Error("fsync " + tmp.string() + ": " + std::strerror(errno));
    } catch (...) {
        ::close(fd);
        fs::remove(tmp);
        throw;
    }
    ::close(fd);
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("rename " + tmp.string() + ": " + ec.message());
    }
}

inline bool valid_id(std::string_view id) {
    if (id.empty() || id.size() > 64) return false;
    for (char c : id)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) return false;
    return true;
}

inline std::string random_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    return fmt::format("{:016x}", rng());
}

} // namespace store_detail

struct StoredBlob {
    std::string key; // sha256 hex of the bytes
    std::uint64_t byte_length = 0;
};

// File-backed document store. Layout under root:
//   projects/<id>.json  canonical project documents
//   blobs/<sha256>      image bytes, content addressed
// Writes are serialized per project id; reads take no lock.
class ProjectStore {
  public:
    explicit ProjectStore(fs::path root) : root_(std::move(root)) {
        fs::create_directories(projects_dir());
        fs::create_directories(blobs_dir());
    }

    const fs::path &root() const { return root_; }

    std::string create(const Project &p) {
        for (;;) {
            auto id = store_detail::random_id();
            auto lock = lock_for(id);
            if (fs::exists(project_path(id))) continue;
            write_project(id, p);
            return id;
        }
    }

    // Creates or replaces the document under `id`.
    void save(const std::string &id, const Project &p) {
        if (!store_detail::valid_id(id)) throw ValidationError("id", "invalid project id '" + id + "'");
        auto lock = lock_for(id);
        write_project(id, p);
    }

    Project load(const std::string &id) const {
        if (!store_detail::valid_id(id) || !fs::exists(project_path(id))) throw NotFoundError("project " + id);
        const auto path = project_path(id);
        return parse_text_as<Project>(store_detail::read_file(path), path.string() + "#$");
    }

    bool exists(const std::string &id) const { return store_detail::valid_id(id) && fs::exists(project_path(id)); }

    // Read-modify-write under the project's write lock.
    template <class F> Project update(const std::string &id, F &&mutate) {
        if (!store_detail::valid_id(id)) throw NotFoundError("project " + id);
        auto lock = lock_for(id);
        Project p = load(id);
        mutate(p);
        write_project(id, p);
        return p;
    }

    std::vector<std::string> list() const {
        std::vector<std::string> ids;
        for (const auto &e : fs::directory_iterator(projects_dir()))
            if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    StoredBlob put_blob(std::string_view bytes) {
        StoredBlob b{sha256_hex(bytes), bytes.size()};
        auto path = blobs_dir() / b.key;
        std::lock_guard lock(blob_mutex_);
        if (!fs::exists(path)) store_detail::atomic_write(path, bytes);
        return b;
    }

    std::optional<std::string> get_blob(const std::string &key) const {
        if (!store_detail::valid_id(key)) return std::nullopt;
        auto path = blobs_dir() / key;
        if (!fs::exists(path)) return std::nullopt;
        return store_detail::read_file(path);
    }

  private:
    fs::path projects_dir() const { return root_ / "projects"; }
    fs::path blobs_dir() const { return root_ / "blobs"; }
    fs::path project_path(const std::string &id) const { return projects_dir() / (id + ".json"); }

    void write_project(const std::string &id, const Project &p) {
        auto v = validate_project(p, ValidationMode::draft);
        if (!v.empty()) throw ValidationError(v.front().path, v.front().message);
        store_detail::atomic_write(project_path(id), to_canonical_json(p) + "\n");
    }

    std::unique_lock<std::mutex> lock_for(const std::string &id) {
        std::shared_ptr<std::mutex> m;
        {
            std::lock_guard g(locks_mutex_);
            auto &slot = locks_[id];
            if (!slot) slot = std::make_shared<std::mutex>();
            m = slot;
        }
        return std::unique_lock<std::mutex>(*m); // mutexes live in locks_ for the store lifetime
    }

    fs::path root_;
    std::mutex locks_mutex_;
    std::map<std::string, std::shared_ptr<std::mutex>> locks_;
    std::mutex blob_mutex_;
};

} // namespace georeport::store
