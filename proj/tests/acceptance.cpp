// Acceptance gate: end-to-end checks of the full toolkit, one line of
// output per criterion. Exits nonzero if any criterion fails. Tolerances
// and time limits are pinned below; everything else is computed live.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "qgame/circuits.hpp"
#include "qgame/errors.hpp"
#include "qgame/games.hpp"
#include "qgame/io.hpp"
#include "qgame/lhv.hpp"
#include "qgame/mitigation.hpp"
#include "qgame/pauli.hpp"
#include "qgame/rng.hpp"
#include "qgame/runner.hpp"
#include "qgame/simulator.hpp"
#include "reference.hpp"

using namespace qgame;
namespace fs = std::filesystem;

namespace {

constexpr double kTolExact = 1e-12;       // closed-form numbers
constexpr double kTolUnitary = 1e-10;     // phase-aligned matrix deviation
constexpr double kTolMitigation = 1e-9;   // analytic round trip
constexpr double kTolSampling = 0.01;     // 1e5-shot frequency estimate

constexpr double kBudgetNoiseless = 1.0;  // seconds, criterion 1
constexpr double kBudgetLhv = 5.0;        // seconds, criterion 2
constexpr double kBudgetUnitary = 10.0;   // seconds, criterion 5

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

template <typename Body>
void criterion(int id, const std::string& name, Body&& body) {
  Outcome outcome;
  try {
    body(outcome);
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  if (outcome.ok) {
    std::printf("PASS  criterion %d: %s\n", id, name.c_str());
  } else {
    std::printf("FAIL  criterion %d: %s (%s)\n", id, name.c_str(),
                outcome.detail.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("qgame_accept_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// The strategy discussed alongside the game: odd qubits answer -1 for X and
// +1 for Y, even qubits answer +1 for X.
LhvAssignment hand_strategy() {
  LhvAssignment a;
  for (std::size_t q = 1; q <= 6; ++q) {
    if (q % 2 == 1) {
      a.variables.push_back({q, Pauli::X});
      a.values.push_back(-1);
      a.variables.push_back({q, Pauli::Y});
      a.values.push_back(+1);
    } else {
      a.variables.push_back({q, Pauli::X});
      a.values.push_back(+1);
    }
  }
  return a;
}

}  // namespace

int main() {
  criterion(1, "noiseless triangle wins with certainty in under 1 s",
            [](Outcome& o) {
    const auto start = Clock::now();
    for (const bool optimized : {true, false}) {
      RunConfig exact;
      exact.game = GameKind::triangle;
      exact.exact = true;
      exact.repetitions = 1;
      exact.use_optimized = optimized;
      const GameResult a = run_game(exact);
      o.require(a.win_probability == 1.0,
                std::string("exact win != 1.0, ") +
                    (optimized ? "optimized" : "original"));

      RunConfig sampled;
      sampled.game = GameKind::triangle;
      sampled.shots = 1024;
      sampled.repetitions = 1;
      sampled.seed = 1;
      sampled.use_optimized = optimized;
      const GameResult b = run_game(sampled);
      o.require(b.win_probability == 1.0,
                std::string("1024-shot win != 1.0, ") +
                    (optimized ? "optimized" : "original"));
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < kBudgetNoiseless,
              "took " + std::to_string(elapsed) + " s");
  });

  criterion(2, "exhaustive classical bounds: 7/8, 28 and 19 in under 5 s",
            [](Outcome& o) {
    const auto start = Clock::now();
    const LhvReport tri = max_lhv_triangle(triangle_spec());
    o.require(tri.max_value == 0.875,
              "triangle bound " + std::to_string(tri.max_value));
    o.require(tri.maximizer_count == 128,
              std::to_string(tri.maximizer_count) + " triangle maximizers");
    const LhvReport all = max_lhv_bell(build_s_all());
    o.require(all.max_value == 28.0,
              "full-group bound " + std::to_string(all.max_value));
    o.require(all.maximizer_count == 1664,
              std::to_string(all.maximizer_count) + " maximizers");
    const LhvReport opt = max_lhv_bell(build_s_optimal());
    o.require(opt.max_value == 19.0,
              "trimmed-operator bound " + std::to_string(opt.max_value));
    o.require(opt.maximizer_count == 3072,
              std::to_string(opt.maximizer_count) + " maximizers");
    const double elapsed = seconds_since(start);
    o.require(elapsed < kBudgetLhv, "took " + std::to_string(elapsed) + " s");
  });

  criterion(3, "classical thresholds and the Bell-to-game map, to 1e-12",
            [](Outcome& o) {
    o.require(near(classical_threshold(build_s_all()), 0.71875, kTolExact),
              "full-group threshold");
    o.require(near(classical_threshold(build_s_optimal()),
                     0.6727272727272727, kTolExact),
              "trimmed threshold");
    o.require(near(win_probability_from_bell(41.0, build_s_optimal()),
                     0.8727272727272727, kTolExact),
              "win probability at S = 41");
  });

  criterion(4, "winning conditions regenerate from stabilizer products",
            [](Outcome& o) {
    const StabilizerSet set = cluster_stabilizers(6);
    o.require(stabilizer_product(set, 0b010101).str() == "+XIXIXI",
              "s1 s3 s5");
    o.require(stabilizer_product(set, 0b010111).str() == "-YXYIXI",
              "s1 s2 s3 s5");

    // Every filled cell of the condition table: the observable's letters
    // and its required sign are exactly a product of ring generators.
    const std::map<std::string, std::vector<std::uint64_t>> masks = {
        {"000", {0b010101, 0b101010}}, {"001", {0b101010}},
        {"010", {0b101010}},           {"011", {0b101010, 0b011101}},
        {"100", {0b101010}},           {"101", {0b101010, 0b110101}},
        {"110", {0b101010, 0b010111}}, {"111", {0b101010}},
    };
    const TriangleGameSpec spec = triangle_spec();
    std::size_t cells = 0;
    for (const auto& [coin, row_masks] : masks) {
      const auto& conditions = spec.rows.at(coin);
      o.require(conditions.size() == row_masks.size(),
                "row " + coin + " size");
      for (std::size_t k = 0;
           k < conditions.size() && k < row_masks.size(); ++k) {
        const PauliString product = stabilizer_product(set, row_masks[k]);
        o.require(product.letters() == conditions[k].observable.letters(),
                  "row " + coin + " letters");
        o.require(phase_sign(product.phase()) == conditions[k].required_sign,
                  "row " + coin + " sign");
        ++cells;
      }
    }
    o.require(cells == 12, std::to_string(cells) + " table cells");
  });

  criterion(5, "optimizer halves the H count and preserves all 67 unitaries "
               "in under 10 s",
            [](Outcome& o) {
    const auto start = Clock::now();
    std::vector<Circuit> circuits = build_triangle_circuits();
    {
      const Circuit& c011 = circuits[3];
      o.require(count_gates(c011, GateKind::H) == 12, "original H count");
      o.require(count_gates(optimize(c011), GateKind::H) == 6,
                "optimized H count");
    }
    for (const Circuit& c : build_calibration_circuits(6)) {
      circuits.push_back(c);
    }
    for (const Circuit& c : build_bell_circuits(build_s_optimal())) {
      circuits.push_back(c);
    }
    o.require(circuits.size() == 67,
              std::to_string(circuits.size()) + " circuits");

    double worst = 0.0;
    for (const Circuit& c : circuits) {
      const Circuit opt = optimize(c);
      const double dev = ref::phase_aligned_deviation(
          ref::circuit_unitary(c), ref::circuit_unitary(opt));
      worst = std::max(worst, dev);
      if (opt.gates.size() > c.gates.size()) {
        o.require(false, "optimizer grew " + c.label);
      }
    }
    o.require(worst <= kTolUnitary,
              "worst deviation " + std::to_string(worst));
    const double elapsed = seconds_since(start);
    o.require(elapsed < kBudgetUnitary,
              "took " + std::to_string(elapsed) + " s");
  });

  criterion(6, "local mitigation: analytic round trip and paired sampling",
            [](Outcome& o) {
    // Analytic: symmetric 5% readout flips, inverted exactly.
    RunConfig exact;
    exact.game = GameKind::triangle;
    exact.exact = true;
    exact.repetitions = 1;
    exact.noise.readout.assign(6, {0.05, 0.05});
    exact.mitigation = MitigationMode::local;
    const GameResult recovered = run_game(exact);
    o.require(near(recovered.win_probability, 1.0, kTolMitigation),
              "analytic round trip " +
                  std::to_string(recovered.win_probability));

    // Sampled: ten paired 1024-shot runs; the pair shares one seed, so the
    // game-circuit shot streams are identical and only the correction
    // differs. The mitigated arm must win at least 9 of 10 pairs.
    int improved = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      RunConfig raw;
      raw.game = GameKind::triangle;
      raw.shots = 1024;
      raw.repetitions = 1;
      raw.seed = seed;
      raw.noise.readout.assign(6, {0.05, 0.05});
      RunConfig fixed = raw;
      fixed.mitigation = MitigationMode::local;
      if (run_game(fixed).win_probability > run_game(raw).win_probability) {
        ++improved;
      }
    }
    o.require(improved >= 9,
              "mitigation improved only " + std::to_string(improved) +
                  " of 10 paired runs");
  });

  criterion(7, "classical play: the 7/8 strategy and random guessing",
            [](Outcome& o) {
    const TriangleGameSpec spec = triangle_spec();
    const LhvAssignment strategy = hand_strategy();
    o.require(eval_classical_strategy(strategy, spec) == 0.875,
              "hand strategy win rate");
    for (const auto& [coin, conditions] : spec.rows) {
      TriangleGameSpec row;
      row.rows[coin] = conditions;
      const double won = eval_classical_strategy(strategy, row);
      if (coin == "000") {
        o.require(won == 0.0, "row 000 unexpectedly won");
      } else {
        o.require(won == 1.0, "row " + coin + " unexpectedly lost");
      }
    }

    // Uniform random answers: 100000 simulated plays per coin.
    SplitRng rng(20250815);
    const std::uint64_t plays = 100000;
    double mean = 0.0;
    for (const auto& [coin, conditions] : spec.rows) {
      std::uint64_t wins = 0;
      for (std::uint64_t k = 0; k < plays; ++k) {
        const std::string outcome =
            bitstring_of_index(rng.uniform_below(64), 6);
        bool all_hold = true;
        for (const Condition& c : conditions) {
          all_hold = all_hold && condition_satisfied(outcome, c);
        }
        wins += all_hold ? 1 : 0;
      }
      mean += static_cast<double>(wins) / static_cast<double>(plays);
    }
    mean /= 8.0;
    o.require(near(mean, 0.375, kTolSampling),
              "random-guess win rate " + std::to_string(mean));
  });

  criterion(8, "trimmed Bell operator: exact value 55 from its 55 circuits",
            [](Outcome& o) {
    const BellGameSpec spec = build_s_optimal();
    const auto circuits = build_bell_circuits(spec);
    o.require(circuits.size() == 55,
              std::to_string(circuits.size()) + " circuits");

    // Bases follow the term letters (identity factors measure Z).
    const std::string prefix = "bell/s_optimal/";
    for (std::size_t k = 0; k < circuits.size(); ++k) {
      const PauliString& term = spec.terms[k];
      o.require(circuits[k].label == prefix + term.str(),
                "label of circuit " + std::to_string(k));
      for (std::size_t q = 1; q <= 6; ++q) {
        const char want = term.letter(q) == Pauli::X   ? 'X'
                          : term.letter(q) == Pauli::Y ? 'Y'
                                                       : 'Z';
        if (circuits[k].bases[q - 1] != want) {
          o.require(false, "bases of " + circuits[k].label);
        }
      }
    }

    std::map<std::string, QuasiDistribution> by_term;
    for (const Circuit& c : circuits) {
      by_term[c.label.substr(prefix.size())] =
          exact_distribution(run_circuit(c));
    }
    const double s = bell_value(by_term, spec);
    o.require(near(s, 55.0, kTolExact),
              "exact Bell value " + std::to_string(s));

    RunConfig config;
    config.game = GameKind::s_optimal;
    config.exact = true;
    config.repetitions = 1;
    o.require(near(run_game(config).win_probability, 1.0, kTolExact),
              "exact win probability");
  });

  criterion(9, "determinism: byte-identical reports, partition-stable scans",
            [](Outcome& o) {
    RunConfig config;
    config.game = GameKind::triangle;
    config.shots = 256;
    config.repetitions = 2;
    config.seed = 42;
    config.noise = builtin_noise_presets().at("readout-mild");
    config.mitigation = MitigationMode::local;

    TempDir a("rep_a");
    TempDir b("rep_b");
    config.out_dir = a.path;
    run_game(config);
    config.out_dir = b.path;
    run_game(config);
    const std::string bytes_a = read_bytes(a.path / "report.json");
    const std::string bytes_b = read_bytes(b.path / "report.json");
    o.require(!bytes_a.empty(), "empty report");
    o.require(bytes_a == bytes_b, "reports differ for the same seed");

    const LhvReport one = max_lhv_bell(build_s_optimal(), 1);
    for (const std::size_t parts : {5u, 32u}) {
      const LhvReport split = max_lhv_bell(build_s_optimal(), parts);
      const bool same = split.max_value == one.max_value &&
                        split.maximizer_count == one.maximizer_count &&
                        split.first_maximizer.values ==
                            one.first_maximizer.values;
      o.require(same,
                "bell scan changed with " + std::to_string(parts) +
                    " partitions");
    }
    const LhvReport t1 = max_lhv_triangle(triangle_spec(), 1);
    const LhvReport t6 = max_lhv_triangle(triangle_spec(), 6);
    o.require(t1.max_value == t6.max_value &&
                  t1.maximizer_count == t6.maximizer_count,
              "triangle scan changed with 6 partitions");
  });

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
