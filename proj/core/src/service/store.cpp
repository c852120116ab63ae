#include "csa/service/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "csa/dsl/document.hpp"
#include "csa/dsl/json.hpp"
#include "csa/dsl/lint.hpp"
#include "csa/service/errors.hpp"

namespace csa::service {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

dsl::Barcode key_barcode(std::string_view barcode) {
  try {
    return dsl::validate_barcode(barcode);
  } catch (const dsl::BarcodeError& e) {
    throw ServiceError(ErrorCode::InvalidBarcode, e.what());
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json diagnostics_json(const dsl::LintReport& report) { return ordered_json::parse(report.to_json())["diagnostics"]; }

void write_all(int fd, std::string_view data, const fs::path& path) {
  while (!data.empty()) {
    const auto n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ServiceError(ErrorCode::StorageFailed, "write " + path.string() + ": " + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

// Temp file + fsync + rename + directory fsync.
void atomic_replace(const fs::path& target, std::string_view contents) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  const fs::path tmp = target.string() + ".tmp" + std::to_string(rng());
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw ServiceError(ErrorCode::StorageFailed, "open " + tmp.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, contents, tmp);
    if (::fsync(fd) != 0) throw ServiceError(ErrorCode::StorageFailed, "fsync " + tmp.string());
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), target.c_str()) != 0) {
    ::unlink(tmp.c_str());
    throw ServiceError(ErrorCode::StorageFailed, "rename onto " + target.string() + ": " + std::strerror(errno));
  }
  const int dfd = ::open(target.parent_path().c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

}  // namespace

ProductStore::ProductStore(fs::path data_dir) : dir_(std::move(data_dir) / "products") {
  fs::create_directories(dir_);
  for (const auto& file : fs::directory_iterator(dir_)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      const auto j = json::parse(buf.str());
      auto resource = dsl::resource_from_json(j.at("resource"));
      if (dsl::lint(resource).has_errors()) continue;
      auto canonical = dsl::serialize_resource(resource);
      const auto barcode = resource.product.barcode;
      if (barcode.digits() != file.path().stem().string()) continue;
      entries_[barcode.digits()] = std::make_shared<const StoreEntry>(
          StoreEntry{barcode, std::move(resource), std::move(canonical), j.at("revision").get<std::int64_t>(),
                     j.at("updatedAt").get<std::string>()});
    } catch (const std::exception&) {
      // Leftover or foreign file; never produced by put().
    }
  }
}

std::int64_t ProductStore::put(std::string_view barcode, std::string_view document) {
  const auto key = key_barcode(barcode);

  dsl::ProductResource resource = [&] {
    try {
      return dsl::parse_resource(document);
    } catch (const dsl::ParseError& e) {
      ordered_json d;
      d["severity"] = "error";
      d["rule"] = dsl::to_string(e.fault());
      d["path"] = e.path();
      d["message"] = e.what();
      throw ServiceError(ErrorCode::ParseFailed, e.what(), ordered_json::array({d}));
    }
  }();
  if (resource.product.barcode != key) {
    throw ServiceError(ErrorCode::BarcodeMismatch, "path barcode " + key.digits() + " does not match document barcode " +
                                                       resource.product.barcode.digits());
  }
  const auto report = dsl::lint(resource);
  if (report.has_errors()) {
    throw ServiceError(ErrorCode::LintFailed, "resource has " + std::to_string(report.error_count()) + " lint error(s)",
                       diagnostics_json(report));
  }

  auto canonical = dsl::serialize_resource(resource);
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(key.digits());
  const std::int64_t revision = it == entries_.end() ? 1 : it->second->revision + 1;
  const auto updated_at = utc_now();

  ordered_json file;
  file["revision"] = revision;
  file["updatedAt"] = updated_at;
  file["resource"] = dsl::to_json(resource);
  atomic_replace(dir_ / (key.digits() + ".json"), file.dump(2) + "\n");

  entries_[key.digits()] =
      std::make_shared<const StoreEntry>(StoreEntry{key, std::move(resource), std::move(canonical), revision, updated_at});
  return revision;
}

std::shared_ptr<const StoreEntry> ProductStore::find(std::string_view barcode) const {
  const auto key = key_barcode(barcode);
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key.digits());
  return it == entries_.end() ? nullptr : it->second;
}

std::vector<ProductRow> ProductStore::list(const std::optional<std::string>& category) const {
  std::vector<ProductRow> rows;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [barcode, entry] : entries_) {
      const auto& p = entry->resource.product;
      if (category && p.category != *category) continue;
      rows.push_back({barcode, p.name, p.category, p.image});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ProductRow& a, const ProductRow& b) {
    return std::tie(a.name, a.barcode) < std::tie(b.name, b.barcode);
  });
  return rows;
}

std::size_t ProductStore::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace csa::service
