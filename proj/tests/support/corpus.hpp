#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace csa::testkit {

struct CorpusFile {
  std::string name;  // file stem
  std::filesystem::path path;
  std::string text;
};

std::filesystem::path samples_dir();

/// samples/products/*.json in name order.
std::vector<CorpusFile> product_corpus();

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace csa::testkit
