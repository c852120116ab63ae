#include "csa/service/media_store.hpp"

#include <fstream>
#include <sstream>

#include "csa/service/errors.hpp"

namespace csa::service {

namespace fs = std::filesystem;

namespace {

void check_name(std::string_view name) {
  if (!dsl::is_safe_media_name(name)) {
    throw ServiceError(ErrorCode::UnsafeName,
                       "media name \"" + std::string(name) + "\" must be a flat identifier of [A-Za-z0-9._-]");
  }
}

void write_file(const fs::path& path, const fs::path& tmp, std::string_view bytes) {
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ServiceError(ErrorCode::StorageFailed, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// Kinds and partial uploads live in dot-directories, which no safe media
// name can address.
MediaStore::MediaStore(fs::path data_dir) : dir_(std::move(data_dir) / "media") {
  fs::create_directories(dir_ / ".kind");
  fs::create_directories(dir_ / ".tmp");
}

void MediaStore::put(std::string_view name, dsl::MediaKind kind, std::string_view bytes) {
  check_name(name);
  std::lock_guard lock(mutex_);
  const std::string file(name);
  write_file(dir_ / ".kind" / file, dir_ / ".tmp" / file, dsl::to_string(kind));
  write_file(dir_ / file, dir_ / ".tmp" / file, bytes);
}

MediaBlob MediaStore::get(std::string_view name) const {
  check_name(name);
  std::lock_guard lock(mutex_);
  const auto path = dir_ / std::string(name);
  if (!fs::is_regular_file(path)) throw ServiceError(ErrorCode::NotFound, "no media named \"" + std::string(name) + "\"");
  MediaBlob blob;
  blob.bytes = read_file(path);
  if (auto kind = dsl::media_kind_from_string(read_file(dir_ / ".kind" / std::string(name)))) blob.kind = *kind;
  return blob;
}

}  // namespace csa::service
