// Command-line front end: run simulated games, score external counts,
// compute classical bounds, export circuits. Success prints a JSON report
// on stdout; every typed failure prints {"error": kind, "message": ...} on
// stderr and exits nonzero.

#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qgame/errors.hpp"
#include "qgame/io.hpp"
#include "qgame/runner.hpp"

namespace {

using nlohmann::json;

qgame::MitigationMode mitigation_from_name(const std::string& name) {
  if (name == "off") {
    return qgame::MitigationMode::off;
  }
  if (name == "local") {
    return qgame::MitigationMode::local;
  }
  qgame::fail("config",
              "unknown mitigation mode '" + name + "' (off or local)");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const json& report) { std::cout << qgame::dump_json(report); }

int do_main(int argc, char** argv) {
  CLI::App app{"Nonlocal-game simulator, scorer and classical-bound oracle"};
  app.require_subcommand(1);

  std::string game = "triangle";
  std::string noise_arg;
  std::string mitigate_arg = "off";
  std::string out_dir;
  std::uint64_t shots = 1024;
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool exact = false;

  CLI::App* run = app.add_subcommand(
      "run", "Simulate a game and report the win probability");
  run->add_option("--game", game, "triangle, s_all or s_optimal");
  run->add_option("--shots", shots, "Shots per circuit")
      ->check(CLI::PositiveNumber);
  run->add_option("--reps", reps, "Independent repetitions")
      ->check(CLI::PositiveNumber);
  run->add_option("--noise", noise_arg, "Noise file or preset name");
  run->add_option("--mitigate", mitigate_arg, "off or local");
  run->add_option("--seed", seed, "Master seed (auto-generated if omitted)");
  run->add_option("--out", out_dir, "Directory for report and raw counts");
  run->add_flag("--exact", exact,
                "Score exact expectations instead of sampling (needs zero "
                "gate noise)");

  std::string counts_dir;
  std::string cal_dir;
  CLI::App* score = app.add_subcommand(
      "score", "Score externally produced counts files");
  score->add_option("counts_dir", counts_dir,
                    "Directory with <label>.json histograms")
      ->required();
  score->add_option("--game", game, "triangle, s_all or s_optimal");
  score->add_option("--cal", cal_dir,
                    "Calibration directory (enables --mitigate local)");
  score->add_option("--mitigate", mitigate_arg, "off or local");
  score->add_option("--out", out_dir, "Write the report to this file");

  CLI::App* bound = app.add_subcommand(
      "bound", "Exhaustive classical bound for a game's operator");
  bound->add_option("--game", game, "triangle, s_all or s_optimal");
  bound->add_option("--out", out_dir, "Write the report to this file");

  CLI::App* exp = app.add_subcommand(
      "export", "Write every circuit (original and optimized) as JSON");
  exp->add_option("--game", game, "triangle, s_all or s_optimal");
  exp->add_option("--out", out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);
  seed_given = run->count("--seed") > 0;

  const qgame::GameKind kind = qgame::game_kind_from_name(game);

  if (run->parsed()) {
    qgame::RunConfig config;
    config.game = kind;
    config.shots = shots;
    config.repetitions = reps;
    if (!noise_arg.empty()) {
      config.noise = qgame::load_noise(noise_arg);
    }
    config.mitigation = mitigation_from_name(mitigate_arg);
    config.seed = seed_given ? seed : fresh_seed();
    config.exact = exact;
    config.out_dir = out_dir;
    const qgame::GameResult result = qgame::run_game(config);
    emit(qgame::run_report_json(result, config));
    return 0;
  }

  if (score->parsed()) {
    const qgame::GameResult result =
        qgame::score_counts(kind, counts_dir, cal_dir,
                            mitigation_from_name(mitigate_arg));
    const json report = qgame::to_json(result);
    if (!out_dir.empty()) {
      qgame::write_json_file(out_dir, report);
    }
    emit(report);
    return 0;
  }

  if (bound->parsed()) {
    const json report = qgame::bound_report(kind);
    if (!out_dir.empty()) {
      qgame::write_json_file(out_dir, report);
    }
    emit(report);
    return 0;
  }

  const std::size_t written = qgame::export_circuits(kind, out_dir);
  emit(json{{"game", game}, {"circuits", written}, {"dir", out_dir}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return do_main(argc, argv);
  } catch (const qgame::Error& e) {
    std::cerr << qgame::dump_json(
        json{{"error", e.kind()}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    std::cerr << qgame::dump_json(
        json{{"error", "internal"}, {"message", e.what()}});
    return 2;
  }
}
