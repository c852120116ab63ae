#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>

#include "csa/dsl/types.hpp"

namespace csa::service {

struct MediaBlob {
  dsl::MediaKind kind = dsl::MediaKind::Image;
  std::string bytes;
};

/// Opaque named blobs under <data>/media. Names follow the MediaRef rule
/// (dsl::is_safe_media_name); anything else is rejected with UnsafeName
/// before the filesystem is touched.
class MediaStore {
 public:
  explicit MediaStore(std::filesystem::path data_dir);

  void put(std::string_view name, dsl::MediaKind kind, std::string_view bytes);
  MediaBlob get(std::string_view name) const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace csa::service
