#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace csa::cli;

  CLI::App app{"csa - community supported appliance toolkit"};
  app.require_subcommand(1);

  auto* lint = app.add_subcommand("lint", "Lint a product resource document");
  std::string lint_path;
  std::string lint_format = "text";
  lint->add_option("path", lint_path, "Resource document")->required();
  lint->add_option("--format", lint_format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto* run = app.add_subcommand("run", "Run a session against the simulated appliance");
  RunOptions run_opts;
  std::string set_id;
  run->add_option("path", run_opts.path, "Resource document")->required();
  auto* set_opt = run->add_option("--set", set_id, "Instruction set id");
  run->add_option("--ability", run_opts.ability_level, "Ability level used to select the set")
      ->check(CLI::PositiveNumber)
      ->excludes(set_opt);
  std::string script, transcript;
  auto* interactive = run->add_flag("--interactive", run_opts.interactive, "Read single-key commands from stdin");
  run->add_option("--script", script, "Action script (line-delimited JSON)")->excludes(interactive);
  run->add_option("--transcript", transcript, "Write the canonical transcript here");

  auto* replay = app.add_subcommand("replay", "Re-execute a transcript and verify it byte-for-byte");
  std::string replay_path;
  replay->add_option("transcript", replay_path, "Transcript file")->required();

  auto* checksum = app.add_subcommand("checksum", "Validate an EAN-13 code or compute its check digit");
  std::string digits;
  checksum->add_option("digits", digits, "12 or 13 digits")->required();

  auto* serve = app.add_subcommand("serve", "Run the repository and session service");
  csa::service::ServiceConfig cfg;
  std::string data_dir = cfg.data_dir.string();
  std::int64_t expiry_seconds = cfg.idle_expiry.count();
  // CLI11 gives a command-line flag priority over its environment variable.
  serve->add_option("--port", cfg.port, "Listen port (0 = any free port)")->envname("CSA_PORT")->capture_default_str();
  serve->add_option("--host", cfg.host, "Listen address")->envname("CSA_HOST")->capture_default_str();
  serve->add_option("--data", data_dir, "Data directory")->envname("CSA_DATA_DIR")->capture_default_str();
  serve->add_option("--session-cap", cfg.session_cap, "Maximum live sessions")
      ->envname("CSA_SESSION_CAP")
      ->capture_default_str();
  serve->add_option("--idle-expiry", expiry_seconds, "Idle session expiry in seconds")
      ->envname("CSA_IDLE_EXPIRY_SECONDS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve->add_option("--time-scale", cfg.time_scale, "Virtual ms per real ms for the clock pump; 0 disables it")
      ->envname("CSA_TIME_SCALE")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help exits 0; every usage error exits 2.
    return app.exit(e) == 0 ? kOk : kUnreadable;
  }

  if (*lint) return cmd_lint(lint_path, lint_format == "json", std::cout, std::cerr);
  if (*run) {
    if (!set_id.empty()) run_opts.set_id = set_id;
    if (!script.empty()) run_opts.script = script;
    if (!transcript.empty()) run_opts.transcript = transcript;
    return cmd_run(run_opts, std::cin, std::cout, std::cerr);
  }
  if (*replay) return cmd_replay(replay_path, std::cout, std::cerr);
  if (*checksum) return cmd_checksum(digits, std::cout);
  if (*serve) {
    cfg.data_dir = data_dir;
    cfg.idle_expiry = std::chrono::seconds(expiry_seconds);
    return cmd_serve(cfg, std::cout, std::cerr);
  }
  return kFailed;
}
