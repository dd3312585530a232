#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "qgame/circuits.hpp"
#include "qgame/errors.hpp"
#include "qgame/io.hpp"
#include "qgame/runner.hpp"

using namespace qgame;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp root, removed on scope exit.
struct TempDir {
  fs::path path;

  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("qgame_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

Histogram tiny_histogram() {
  Histogram h;
  h.n = 2;
  h.shots = 10;
  h.counts = {{"00", 7}, {"11", 3}};
  return h;
}

}  // namespace

TEST_CASE("histogram JSON round trip and validation") {
  const Histogram h = tiny_histogram();
  const Histogram back = histogram_from_json(to_json(h));
  CHECK(back.n == h.n);
  CHECK(back.shots == h.shots);
  CHECK(back.counts == h.counts);

  auto j = to_json(h);
  j["shots"] = 11;  // counts no longer sum to shots
  CHECK_THROWS_AS(histogram_from_json(j), Error);

  auto missing = to_json(h);
  missing.erase("counts");
  try {
    histogram_from_json(missing);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == "parse");
  }

  auto negative = to_json(h);
  negative["counts"]["00"] = -1;
  CHECK_THROWS_AS(histogram_from_json(negative), Error);

  auto badkey = to_json(h);
  badkey["counts"]["000"] = 0;
  CHECK_THROWS_AS(histogram_from_json(badkey), Error);
}

TEST_CASE("quasi-distribution JSON keeps signed weights exactly") {
  QuasiDistribution d;
  d.n = 3;
  d.weights = {{"000", 1.25}, {"101", -0.17}, {"111", 1.0 / 3.0}};
  const QuasiDistribution back = quasi_from_json(to_json(d));
  CHECK(back.n == 3);
  CHECK(back.weights == d.weights);  // bit-exact through the dump

  auto j = to_json(d);
  j["weights"]["0x1"] = 0.5;
  CHECK_THROWS_AS(quasi_from_json(j), Error);
}

TEST_CASE("noise model JSON: defaults, round trip, malformed input") {
  NoiseModel noise;
  noise.p1 = 0.001;
  noise.p2 = 0.0125;
  noise.readout = {{0.03, 0.01}, {0.0, 0.07}};
  const NoiseModel back = noise_from_json(to_json(noise));
  CHECK(back.p1 == noise.p1);
  CHECK(back.p2 == noise.p2);
  CHECK(back.readout == noise.readout);

  // Absent fields mean "no noise of that kind".
  const NoiseModel empty = noise_from_json(nlohmann::json::object());
  CHECK(empty.p1 == 0.0);
  CHECK(empty.p2 == 0.0);
  CHECK(empty.readout.empty());

  CHECK_THROWS_AS(noise_from_json(nlohmann::json::array()), Error);
  nlohmann::json bad = {{"readout", {{0.1}}}};  // not an [e01, e10] pair
  CHECK_THROWS_AS(noise_from_json(bad), Error);
}

TEST_CASE("circuit JSON round trip preserves gates and bases") {
  const Circuit original = build_triangle_circuits()[6];
  const Circuit back = circuit_from_json(to_json(original));
  CHECK(back.n == original.n);
  CHECK(back.label == original.label);
  CHECK(back.gates == original.gates);
  CHECK(back.bases == original.bases);

  auto j = to_json(original);
  j["gates"][0]["kind"] = "Q";
  CHECK_THROWS_AS(circuit_from_json(j), Error);

  auto out_of_range = to_json(original);
  out_of_range["gates"][0]["qubits"] = {9};
  try {
    circuit_from_json(out_of_range);
    FAIL("expected gate error from validation");
  } catch (const Error& e) {
    CHECK(e.kind() == "gate");
  }
}

TEST_CASE("game result JSON round trip") {
  GameResult result;
  result.game = "triangle";
  result.win_probability = 1.02;
  result.win_probability_clamped = 1.0;
  result.threshold_classical = 0.875;
  result.per_circuit = {{"triangle/000", 1.0}, {"triangle/011", 0.97}};
  result.std_error = 0.003;
  result.mitigated = true;
  result.repetitions = 10;

  const GameResult back = game_result_from_json(to_json(result));
  CHECK(back.game == result.game);
  CHECK(back.win_probability == result.win_probability);
  CHECK(back.win_probability_clamped == result.win_probability_clamped);
  CHECK(back.per_circuit == result.per_circuit);
  CHECK(back.std_error == result.std_error);
  CHECK(back.mitigated == result.mitigated);
  CHECK(back.repetitions == result.repetitions);
}

TEST_CASE("dump_json sorts keys and ends with a newline") {
  nlohmann::json a;
  a["zeta"] = 1;
  a["alpha"] = 2;
  nlohmann::json b;
  b["alpha"] = 2;
  b["zeta"] = 1;
  CHECK(dump_json(a) == dump_json(b));
  CHECK(dump_json(a).back() == '\n');
}

TEST_CASE("JSON files: write, read, and failure modes") {
  TempDir tmp;
  const fs::path nested = tmp.path / "a" / "b" / "data.json";
  write_json_file(nested, to_json(tiny_histogram()));  // creates parents
  const Histogram back = histogram_from_json(read_json_file(nested));
  CHECK(back.counts == tiny_histogram().counts);

  CHECK_THROWS_AS(read_json_file(tmp.path / "missing.json"), Error);
  try {
    read_json_file(tmp.path / "missing.json");
  } catch (const Error& e) {
    CHECK(e.kind() == "io");
  }

  const fs::path junk = tmp.path / "junk.json";
  std::ofstream(junk) << "{not json";
  try {
    read_json_file(junk);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == "parse");
  }
}

TEST_CASE("noise presets: builtins and their files agree") {
  const auto& presets = builtin_noise_presets();
  REQUIRE(presets.count("readout-mild") == 1);
  REQUIRE(presets.count("readout-only") == 1);

  const NoiseModel& mild = presets.at("readout-mild");
  CHECK(mild.p1 == 0.001);
  CHECK(mild.p2 == 0.01);
  REQUIRE(mild.readout.size() == 6);
  for (const auto& e : mild.readout) {
    CHECK(e[0] == 0.03);
    CHECK(e[1] == 0.03);
  }
  const NoiseModel& readout_only = presets.at("readout-only");
  CHECK(readout_only.p1 == 0.0);
  CHECK(readout_only.p2 == 0.0);
  REQUIRE(readout_only.readout.size() == 6);
  CHECK(readout_only.readout[0][0] == 0.05);

  // The shipped preset files match the builtins byte for byte once parsed.
  const fs::path preset_dir = QGAME_PRESETS_DIR;
  for (const auto& [name, model] : presets) {
    CAPTURE(name);
    const fs::path file = preset_dir / (name + ".json");
    REQUIRE(fs::exists(file));
    const NoiseModel from_file = load_noise(file.string());
    CHECK(dump_json(to_json(from_file)) == dump_json(to_json(model)));
  }
}

TEST_CASE("load_noise resolution order: file, then preset, then error") {
  TempDir tmp;
  const fs::path file = tmp.path / "custom.json";
  NoiseModel custom;
  custom.p2 = 0.125;
  write_json_file(file, to_json(custom));
  CHECK(load_noise(file.string()).p2 == 0.125);
  CHECK(load_noise("readout-only").readout.size() == 6);
  CHECK_THROWS_AS(load_noise("no-such-preset"), Error);
  try {
    load_noise("no-such-preset");
  } catch (const Error& e) {
    CHECK(e.kind() == "config");
  }
}

TEST_CASE("game kind names round trip") {
  for (GameKind kind : {GameKind::triangle, GameKind::s_all,
                        GameKind::s_optimal}) {
    CHECK(game_kind_from_name(game_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(game_kind_from_name("chsh"), Error);
}

TEST_CASE("run config validation") {
  RunConfig zero_shots;
  zero_shots.shots = 0;
  CHECK_THROWS_AS(zero_shots.validate(), Error);

  RunConfig zero_reps;
  zero_reps.repetitions = 0;
  CHECK_THROWS_AS(zero_reps.validate(), Error);

  RunConfig exact_noisy;
  exact_noisy.exact = true;
  exact_noisy.noise.p2 = 0.01;
  try {
    exact_noisy.validate();
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == "config");
  }

  RunConfig exact_readout;  // readout noise is fine in exact mode
  exact_readout.exact = true;
  exact_readout.noise.readout.assign(6, {0.05, 0.05});
  CHECK_NOTHROW(exact_readout.validate());
}

TEST_CASE("noiseless runs win with certainty, exact and sampled") {
  RunConfig exact;
  exact.game = GameKind::triangle;
  exact.exact = true;
  exact.repetitions = 1;
  const GameResult a = run_game(exact);
  CHECK(a.win_probability == 1.0);
  CHECK(a.std_error == 0.0);

  RunConfig sampled;
  sampled.game = GameKind::triangle;
  sampled.shots = 256;
  sampled.repetitions = 2;
  sampled.seed = 11;
  const GameResult b = run_game(sampled);
  CHECK(b.win_probability == 1.0);  // losing outcomes have probability zero
  CHECK(b.std_error == 0.0);

  sampled.use_optimized = false;
  const GameResult c = run_game(sampled);
  CHECK(c.win_probability == 1.0);

  // The Bell games reach their quantum value the same way.
  RunConfig bell;
  bell.game = GameKind::s_optimal;
  bell.exact = true;
  bell.repetitions = 1;
  const GameResult d = run_game(bell);
  CHECK(d.win_probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical configs give byte-identical reports") {
  RunConfig config;
  config.game = GameKind::triangle;
  config.shots = 64;
  config.repetitions = 2;
  config.seed = 77;
  config.noise = builtin_noise_presets().at("readout-mild");

  const GameResult a = run_game(config);
  const GameResult b = run_game(config);
  CHECK(dump_json(run_report_json(a, config)) ==
        dump_json(run_report_json(b, config)));

  // A different seed changes the sampled outcome.
  RunConfig other = config;
  other.seed = 78;
  const GameResult c = run_game(other);
  CHECK(dump_json(to_json(a)) != dump_json(to_json(c)));

  // The report records its provenance.
  const auto report = run_report_json(a, config);
  CHECK(report.at("seed") == 77);
  CHECK(report.at("shots") == 64);
}

TEST_CASE("exact mitigation undoes analytic readout noise") {
  RunConfig config;
  config.game = GameKind::triangle;
  config.exact = true;
  config.repetitions = 1;
  config.noise.readout.assign(6, {0.05, 0.05});

  const GameResult raw = run_game(config);
  CHECK(raw.win_probability < 0.9);  // readout errors bite

  config.mitigation = MitigationMode::local;
  const GameResult fixed = run_game(config);
  CHECK(fixed.mitigated);
  CHECK(fixed.win_probability == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("run artifacts: counts, confusion audit, report, rescoring") {
  TempDir tmp;
  RunConfig config;
  config.game = GameKind::triangle;
  config.shots = 128;
  config.repetitions = 1;
  config.seed = 5;
  config.noise = builtin_noise_presets().at("readout-only");
  config.mitigation = MitigationMode::local;
  config.out_dir = tmp.path;

  const GameResult result = run_game(config);

  // Per-circuit counts: 8 game circuits plus 4 calibration patterns.
  const fs::path rep0 = tmp.path / "counts" / "rep0";
  int game_files = 0;
  int cal_files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(rep0)) {
    if (!entry.is_regular_file()) {
      continue;
    }
    const Histogram h = histogram_from_json(read_json_file(entry.path()));
    CHECK(h.shots == 128);
    const auto rel = fs::relative(entry.path(), rep0).string();
    (rel.rfind("cal/", 0) == 0 ? cal_files : game_files) += 1;
  }
  CHECK(game_files == 8);
  CHECK(cal_files == 4);

  // Confusion audit: one entry per player with a 4x4 matrix.
  const auto confusion = read_json_file(tmp.path / "confusion" / "rep0.json");
  REQUIRE(confusion.is_array());
  REQUIRE(confusion.size() == 3);
  CHECK(confusion[0].at("player") == 1);
  CHECK(confusion[0].at("matrix").size() == 4);

  // The report on disk is exactly what run_game returned.
  const auto report = read_json_file(tmp.path / "report.json");
  CHECK(dump_json(report) == dump_json(run_report_json(result, config)));
  CHECK(fs::exists(tmp.path / "report_meta.json"));

  // Rescoring the written counts reproduces the run bit for bit.
  const GameResult rescored = score_counts(
      GameKind::triangle, rep0, rep0, MitigationMode::local);
  CHECK(dump_json(to_json(rescored)) == dump_json(to_json(result)));

  // Without mitigation the rescored value differs (readout errors remain).
  const GameResult unmitigated = score_counts(GameKind::triangle, rep0);
  CHECK(unmitigated.win_probability != result.win_probability);
}

TEST_CASE("score_counts failure modes") {
  TempDir tmp;
  try {
    score_counts(GameKind::triangle, tmp.path);
    FAIL("expected incomplete_input");
  } catch (const Error& e) {
    CHECK(e.kind() == "incomplete_input");
  }

  try {
    score_counts(GameKind::triangle, tmp.path, {}, MitigationMode::local);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == "config");
  }
}

TEST_CASE("bound reports carry the full classical picture") {
  const auto report = bound_report(GameKind::s_optimal);
  CHECK(report.at("operator") == "s_optimal");
  CHECK(report.at("lhv_max") == 19.0);
  CHECK(report.at("quantum_value") == 55.0);
  CHECK(report.at("classical_threshold").get<double>() ==
        doctest::Approx(37.0 / 55.0).epsilon(1e-15));
  CHECK(report.at("maximizers") == 3072);
  CHECK(report.at("example_assignment").size() == 18);
  CHECK(report.at("example_assignment").contains("X1"));

  const auto triangle = bound_report(GameKind::triangle);
  CHECK(triangle.at("lhv_max") == 0.875);
  CHECK(triangle.at("quantum_value") == 1.0);
  CHECK(triangle.at("classical_threshold") == 0.875);
  CHECK(triangle.at("maximizers") == 128);
  CHECK(triangle.at("example_assignment").size() == 9);
}

TEST_CASE("circuit export writes both variants of every circuit") {
  TempDir tmp;
  const std::size_t triangle_count =
      export_circuits(GameKind::triangle, tmp.path);
  CHECK(triangle_count == 12);  // 8 coins + 4 calibration patterns

  std::size_t originals = 0;
  std::size_t optimized = 0;
  for (const auto& entry :
       fs::recursive_directory_iterator(tmp.path / "original")) {
    if (entry.is_regular_file()) {
      ++originals;
      CHECK_NOTHROW(circuit_from_json(read_json_file(entry.path())));
    }
  }
  for (const auto& entry :
       fs::recursive_directory_iterator(tmp.path / "optimized")) {
    if (entry.is_regular_file()) {
      ++optimized;
      const Circuit c = circuit_from_json(read_json_file(entry.path()));
      CHECK(count_gates(c, GateKind::CZ) == 0);
    }
  }
  CHECK(originals == 12);
  CHECK(optimized == 12);

  TempDir bell_tmp;
  CHECK(export_circuits(GameKind::s_optimal, bell_tmp.path) == 55);
}
