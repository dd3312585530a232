#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "qgame/games.hpp"
#include "qgame/simulator.hpp"

namespace qgame {

enum class GameKind { triangle, s_all, s_optimal };

std::string_view game_kind_name(GameKind kind);
GameKind game_kind_from_name(std::string_view name);  // Error("config")

enum class MitigationMode { off, local };

/// One experiment: a game, a noise model, shot/repetition counts and a
/// seed. Every random draw derives from (seed, repetition, circuit label),
/// so reruns with the same config are byte-identical, including the report
/// files (timestamps live in a sidecar, never in the report).
struct RunConfig {
  GameKind game = GameKind::triangle;
  std::uint64_t shots = 1024;
  std::size_t repetitions = 10;
  NoiseModel noise;
  MitigationMode mitigation = MitigationMode::off;
  std::uint64_t seed = 1;
  /// Score exact Born probabilities instead of sampling. Requires zero
  /// gate noise; readout noise is pushed through analytically.
  bool exact = false;
  /// Run the peephole-optimized circuits (the default everywhere; tests
  /// flip this to compare variants).
  bool use_optimized = true;
  /// When set: report.json, report_meta.json, per-repetition raw counts
  /// and (when mitigating) confusion-matrix audit files land here.
  std::filesystem::path out_dir;

  void validate() const;
};

/// Simulates, optionally mitigates, scores, and aggregates across
/// repetitions (mean, sample-stddev / sqrt(reps)).
GameResult run_game(const RunConfig& config);

/// The report written by run_game: the GameResult plus the seed and shot
/// count that produced it (a report must never hide its seed).
nlohmann::json run_report_json(const GameResult& result,
                               const RunConfig& config);

/// Scores externally produced counts: one Histogram file per required
/// circuit label under `counts_dir` (label + ".json", labels contain
/// directories). With mitigation, `calibration_dir` must hold the four
/// cal/<pattern>.json files (directly or under a cal/ subdirectory).
GameResult score_counts(GameKind game,
                        const std::filesystem::path& counts_dir,
                        const std::filesystem::path& calibration_dir = {},
                        MitigationMode mitigation = MitigationMode::off);

/// Runs the exhaustive classical-bound oracle and shapes its CLI report.
nlohmann::json bound_report(GameKind game);

/// Writes every circuit of the game under original/ and optimized/;
/// triangle additionally exports its four calibration circuits. Returns
/// the number of circuit files per variant.
std::size_t export_circuits(GameKind game,
                            const std::filesystem::path& out_dir);

/// Named presets (illustrative error rates, not device calibrations).
const std::map<std::string, NoiseModel>& builtin_noise_presets();

/// Resolves --noise: an existing file wins, otherwise a preset name;
/// anything else is Error("config").
NoiseModel load_noise(const std::string& name_or_path);

}  // namespace qgame
