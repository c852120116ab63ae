#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "csa/service/service.hpp"

namespace csa::cli {

// Exit codes shared by the subcommands.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;       // lint errors, invalid barcode, replay divergence, bind failure
inline constexpr int kUnreadable = 2;   // file missing or not a parseable document
inline constexpr int kPrecondition = 3; // script asked for a physically impossible action

int cmd_lint(const std::string& path, bool json, std::ostream& out, std::ostream& err);

struct RunOptions {
  std::string path;
  std::optional<std::string> set_id;
  std::int64_t ability_level = 1;
  bool interactive = false;
  std::optional<std::string> script;
  std::optional<std::string> transcript;
};
int cmd_run(const RunOptions& options, std::istream& in, std::ostream& out, std::ostream& err);

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err);

int cmd_checksum(const std::string& digits, std::ostream& out);

int cmd_serve(const service::ServiceConfig& config, std::ostream& out, std::ostream& err);

/// Reads a whole file; empty optional if it cannot be opened.
std::optional<std::string> read_file(const std::string& path);

}  // namespace csa::cli
