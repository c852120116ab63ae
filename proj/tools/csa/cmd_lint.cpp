#include <fstream>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "csa/dsl/document.hpp"
#include "csa/dsl/lint.hpp"

namespace csa::cli {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_lint(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "csa lint: cannot read " << path << "\n";
    return kUnreadable;
  }

  dsl::LintReport report;
  try {
    report = dsl::lint(dsl::parse_resource(*text));
  } catch (const dsl::ParseError& e) {
    // A parse failure is reported in the same shape as a lint diagnostic.
    dsl::LintReport failed;
    failed.diagnostics.push_back({dsl::Severity::Error, std::string(dsl::to_string(e.fault())), e.path(), e.what()});
    out << (json ? failed.to_json() + "\n" : failed.to_text());
    return kUnreadable;
  }

  if (json) {
    out << report.to_json() << "\n";
  } else {
    out << report.to_text();
    err << path << ": " << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
  }
  return report.has_errors() ? kFailed : kOk;
}

}  // namespace csa::cli
