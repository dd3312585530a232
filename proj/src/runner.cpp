#include "qgame/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <utility>
#include <vector>

#include "qgame/circuits.hpp"
#include "qgame/errors.hpp"
#include "qgame/io.hpp"
#include "qgame/lhv.hpp"
#include "qgame/mitigation.hpp"
#include "qgame/rng.hpp"

namespace qgame {

namespace {

using nlohmann::json;

constexpr std::string_view kTrianglePrefix = "triangle/";
constexpr std::string_view kCalPrefix = "cal/";

struct GameSetup {
  GameKind kind;
  TriangleGameSpec tri;   // filled for the triangle game
  BellGameSpec bell;      // filled for the Bell games
  std::vector<Circuit> circuits;
};

GameSetup make_setup(GameKind kind) {
  GameSetup setup{kind, {}, {}, {}};
  if (kind == GameKind::triangle) {
    setup.tri = triangle_spec();
    setup.circuits = build_triangle_circuits();
  } else {
    setup.bell =
        (kind == GameKind::s_all) ? build_s_all() : build_s_optimal();
    setup.circuits = build_bell_circuits(setup.bell);
  }
  return setup;
}

std::string label_suffix(const std::string& label, std::string_view prefix) {
  if (label.size() <= prefix.size() ||
      label.compare(0, prefix.size(), prefix) != 0) {
    fail("config", "unexpected circuit label " + label);
  }
  return label.substr(prefix.size());
}

// Scores one realization from distributions keyed by circuit label.
GameResult score_realization(
    const GameSetup& setup,
    const std::map<std::string, QuasiDistribution>& by_label) {
  if (setup.kind == GameKind::triangle) {
    std::map<std::string, QuasiDistribution> by_coin;
    for (const auto& [label, dist] : by_label) {
      by_coin[label_suffix(label, kTrianglePrefix)] = dist;
    }
    return score_triangle(by_coin, setup.tri);
  }

  const std::string prefix = "bell/" + setup.bell.label + "/";
  GameResult result;
  result.game = std::string(game_kind_name(setup.kind));
  result.threshold_classical = classical_threshold(setup.bell);
  std::map<std::string, QuasiDistribution> by_term;
  for (const auto& [label, dist] : by_label) {
    const std::string term_text = label_suffix(label, prefix);
    by_term[term_text] = dist;
    result.per_circuit[label] =
        term_expectation(dist, PauliString::parse(term_text));
  }
  const double s = bell_value(by_term, setup.bell);
  result.win_probability = win_probability_from_bell(s, setup.bell);
  result.win_probability_clamped =
      std::clamp(result.win_probability, 0.0, 1.0);
  return result;
}

std::string iso_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view game_kind_name(GameKind kind) {
  switch (kind) {
    case GameKind::triangle:
      return "triangle";
    case GameKind::s_all:
      return "s_all";
    case GameKind::s_optimal:
      return "s_optimal";
  }
  fail("config", "unreachable game kind");
}

GameKind game_kind_from_name(std::string_view name) {
  if (name == "triangle") {
    return GameKind::triangle;
  }
  if (name == "s_all") {
    return GameKind::s_all;
  }
  if (name == "s_optimal") {
    return GameKind::s_optimal;
  }
  fail("config", "unknown game '" + std::string(name) +
                     "' (expected triangle, s_all or s_optimal)");
}

void RunConfig::validate() const {
  if (shots < 1) {
    fail("config", "shots must be at least 1");
  }
  if (repetitions < 1) {
    fail("config", "repetitions must be at least 1");
  }
  noise.validate(6);
  if (exact && noise.gate_noise()) {
    fail("config",
         "exact expectations require zero gate noise (readout noise is "
         "applied analytically)");
  }
}

GameResult run_game(const RunConfig& config) {
  config.validate();
  GameSetup setup = make_setup(config.game);
  if (config.use_optimized) {
    for (Circuit& circuit : setup.circuits) {
      circuit = optimize(circuit);
    }
  }
  std::vector<Circuit> calibration;
  if (config.mitigation == MitigationMode::local) {
    calibration = build_calibration_circuits(6);
    if (config.use_optimized) {
      for (Circuit& circuit : calibration) {
        circuit = optimize(circuit);
      }
    }
  }

  const bool writing = !config.out_dir.empty();
  const SplitRng root(config.seed);
  std::vector<GameResult> realizations;

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const SplitRng rep_rng = root.derive(rep);
    const std::filesystem::path rep_dir =
        config.out_dir / "counts" / ("rep" + std::to_string(rep));

    ConfusionSet confusion;
    if (config.mitigation == MitigationMode::local) {
      std::map<std::string, QuasiDistribution> cal_dists;
      std::map<std::string, Histogram> cal_hists;
      for (const Circuit& circuit : calibration) {
        const std::string pattern = label_suffix(circuit.label, kCalPrefix);
        if (config.exact) {
          cal_dists[pattern] = apply_readout(
              exact_distribution(run_circuit(circuit)), config.noise);
        } else {
          SplitRng rng = rep_rng.derive(circuit.label);
          Histogram hist =
              sample_counts(circuit, config.shots, config.noise, rng);
          if (writing) {
            write_json_file(rep_dir / (circuit.label + ".json"),
                            to_json(hist));
          }
          cal_hists.emplace(pattern, std::move(hist));
        }
      }
      confusion = config.exact ? estimate_confusion(cal_dists)
                               : estimate_confusion(cal_hists);
      if (writing) {
        write_json_file(config.out_dir / "confusion" /
                            ("rep" + std::to_string(rep) + ".json"),
                        confusion_to_json(confusion));
      }
    }

    std::map<std::string, QuasiDistribution> by_label;
    for (const Circuit& circuit : setup.circuits) {
      QuasiDistribution dist;
      if (config.exact) {
        dist = apply_readout(exact_distribution(run_circuit(circuit)),
                             config.noise);
        if (config.mitigation == MitigationMode::local) {
          dist = mitigate(dist, confusion);
        }
      } else {
        SplitRng rng = rep_rng.derive(circuit.label);
        const Histogram hist =
            sample_counts(circuit, config.shots, config.noise, rng);
        if (writing) {
          write_json_file(rep_dir / (circuit.label + ".json"),
                          to_json(hist));
        }
        dist = (config.mitigation == MitigationMode::local)
                   ? mitigate(hist, confusion)
                   : normalized(hist);
      }
      by_label.emplace(circuit.label, std::move(dist));
    }
    realizations.push_back(score_realization(setup, by_label));
  }

  // Aggregate: mean win probability, sample stddev / sqrt(reps), and the
  // per-circuit mean of each realization's per-circuit statistic.
  GameResult result = realizations.front();
  const double reps = static_cast<double>(realizations.size());
  double mean = 0.0;
  for (const GameResult& r : realizations) {
    mean += r.win_probability;
  }
  mean /= reps;
  double variance = 0.0;
  if (realizations.size() > 1) {
    for (const GameResult& r : realizations) {
      const double d = r.win_probability - mean;
      variance += d * d;
    }
    variance /= (reps - 1.0);
  }
  result.win_probability = mean;
  result.win_probability_clamped = std::clamp(mean, 0.0, 1.0);
  result.std_error = std::sqrt(variance / reps);
  result.repetitions = realizations.size();
  result.mitigated = config.mitigation == MitigationMode::local;
  for (auto& [label, value] : result.per_circuit) {
    double sum = 0.0;
    for (const GameResult& r : realizations) {
      sum += r.per_circuit.at(label);
    }
    value = sum / reps;
  }

  if (writing) {
    write_json_file(config.out_dir / "report.json",
                    run_report_json(result, config));
    write_json_file(config.out_dir / "report_meta.json",
                    json{{"created_at", iso_utc_now()}});
  }
  return result;
}

nlohmann::json run_report_json(const GameResult& result,
                               const RunConfig& config) {
  json report = to_json(result);
  report["seed"] = config.seed;
  report["shots"] = config.shots;
  return report;
}

GameResult score_counts(GameKind game,
                        const std::filesystem::path& counts_dir,
                        const std::filesystem::path& calibration_dir,
                        MitigationMode mitigation) {
  GameSetup setup = make_setup(game);

  ConfusionSet confusion;
  if (mitigation == MitigationMode::local) {
    if (calibration_dir.empty()) {
      fail("config", "mitigation requires a calibration directory");
    }
    std::map<std::string, Histogram> cal;
    for (const Circuit& circuit : build_calibration_circuits(6)) {
      const std::string pattern = label_suffix(circuit.label, kCalPrefix);
      const std::filesystem::path nested =
          calibration_dir / "cal" / (pattern + ".json");
      const std::filesystem::path flat =
          calibration_dir / (pattern + ".json");
      const std::filesystem::path& path =
          std::filesystem::exists(nested) ? nested : flat;
      if (!std::filesystem::exists(path)) {
        fail("incomplete_input",
             "missing calibration counts for pattern " + pattern);
      }
      cal.emplace(pattern, histogram_from_json(read_json_file(path)));
    }
    confusion = estimate_confusion(cal);
  }

  std::map<std::string, QuasiDistribution> by_label;
  for (const Circuit& circuit : setup.circuits) {
    const std::filesystem::path path =
        counts_dir / (circuit.label + ".json");
    if (!std::filesystem::exists(path)) {
      fail("incomplete_input", "missing counts file for " + circuit.label);
    }
    const Histogram hist = histogram_from_json(read_json_file(path));
    by_label[circuit.label] = (mitigation == MitigationMode::local)
                                  ? mitigate(hist, confusion)
                                  : normalized(hist);
  }
  GameResult result = score_realization(setup, by_label);
  result.mitigated = mitigation == MitigationMode::local;
  result.repetitions = 1;
  return result;
}

nlohmann::json bound_report(GameKind game) {
  if (game == GameKind::triangle) {
    const LhvReport report = max_lhv_triangle(triangle_spec());
    return lhv_report_to_json("triangle", report,
                              TriangleGameSpec::kQuantumValue,
                              report.max_value);
  }
  const BellGameSpec spec =
      (game == GameKind::s_all) ? build_s_all() : build_s_optimal();
  const LhvReport report = max_lhv_bell(spec);
  const double threshold =
      (1.0 + report.max_value / spec.quantum_value) / 2.0;
  return lhv_report_to_json(spec.label, report, spec.quantum_value,
                            threshold);
}

std::size_t export_circuits(GameKind game,
                            const std::filesystem::path& out_dir) {
  GameSetup setup = make_setup(game);
  std::vector<Circuit> circuits = std::move(setup.circuits);
  if (game == GameKind::triangle) {
    for (Circuit& circuit : build_calibration_circuits(6)) {
      circuits.push_back(std::move(circuit));
    }
  }
  for (const Circuit& circuit : circuits) {
    write_json_file(out_dir / "original" / (circuit.label + ".json"),
                    to_json(circuit));
    write_json_file(out_dir / "optimized" / (circuit.label + ".json"),
                    to_json(optimize(circuit)));
  }
  return circuits.size();
}

const std::map<std::string, NoiseModel>& builtin_noise_presets() {
  static const std::map<std::string, NoiseModel> presets = [] {
    std::map<std::string, NoiseModel> m;
    NoiseModel mild;
    mild.p1 = 0.001;
    mild.p2 = 0.01;
    mild.readout.assign(6, {0.03, 0.03});
    m.emplace("readout-mild", std::move(mild));
    NoiseModel readout_only;
    readout_only.readout.assign(6, {0.05, 0.05});
    m.emplace("readout-only", std::move(readout_only));
    return m;
  }();
  return presets;
}

NoiseModel load_noise(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) {
    return noise_from_json(read_json_file(name_or_path));
  }
  const auto& presets = builtin_noise_presets();
  const auto it = presets.find(name_or_path);
  if (it == presets.end()) {
    fail("config", "'" + name_or_path +
                       "' is neither a noise file nor a known preset");
  }
  return it->second;
}

}  // namespace qgame
