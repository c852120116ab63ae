#include <ostream>

#include "commands.hpp"
#include "csa/host/transcript.hpp"

namespace csa::cli {

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "csa replay: cannot read " << path << "\n";
    return kUnreadable;
  }
  const auto result = host::replay_transcript(*text);
  if (result.ok) {
    out << "replay ok\n";
    return kOk;
  }
  out << "line " << result.line << ": " << result.message << "\n";
  if (!result.expected.empty()) out << "- " << result.expected << "\n";
  if (!result.actual.empty()) out << "+ " << result.actual << "\n";
  return kFailed;
}

}  // namespace csa::cli
