#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "csa/dsl/types.hpp"

namespace csa::service {

struct StoreEntry {
  dsl::Barcode barcode;
  dsl::ProductResource resource;
  std::string canonical;  // serialize_resource(resource)
  std::int64_t revision = 0;
  std::string updated_at;  // ISO-8601 UTC
};

struct ProductRow {
  std::string barcode;
  std::string name;
  std::string category;
  dsl::MediaRef image;

  friend bool operator==(const ProductRow&, const ProductRow&) = default;
};

/// Barcode-keyed repository of lint-clean resources, persisted as one file
/// per barcode under <data>/products. Writes are last-write-wins and land
/// through an fsync'd temporary file renamed over the old one, so a reader
/// or a restart sees either the old or the new revision, never a mix.
class ProductStore {
 public:
  /// Creates the directory if needed and loads every stored product.
  explicit ProductStore(std::filesystem::path data_dir);

  /// Parses, lints and stores. Throws ServiceError (InvalidBarcode,
  /// ParseFailed, BarcodeMismatch, LintFailed, StorageFailed).
  std::int64_t put(std::string_view barcode, std::string_view document);

  /// Throws ServiceError(InvalidBarcode) for a malformed key.
  std::shared_ptr<const StoreEntry> find(std::string_view barcode) const;

  /// Sorted by name, then barcode. Empty filter lists everything.
  std::vector<ProductRow> list(const std::optional<std::string>& category = std::nullopt) const;

  std::size_t size() const;

 private:
  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const StoreEntry>> entries_;
};

}  // namespace csa::service
