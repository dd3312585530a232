#include "qgame/io.hpp"

#include <fstream>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    fail("parse", std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

double require_number(const json& j, const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_number()) {
    fail("parse", std::string("field \"") + name + "\" must be a number");
  }
  return v.get<double>();
}

std::uint64_t require_count(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail("parse", std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string require_string(const json& j, const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_string()) {
    fail("parse", std::string("field \"") + name + "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

json to_json(const Histogram& hist) {
  json counts = json::object();
  for (const auto& [bits, c] : hist.counts) {
    counts[bits] = c;
  }
  return json{{"n", hist.n}, {"shots", hist.shots}, {"counts", counts}};
}

Histogram histogram_from_json(const json& j) {
  Histogram hist;
  hist.n = require_count(require_field(j, "n"), "\"n\"");
  hist.shots = require_count(require_field(j, "shots"), "\"shots\"");
  const json& counts = require_field(j, "counts");
  if (!counts.is_object()) {
    fail("parse", "field \"counts\" must be an object");
  }
  for (const auto& [bits, c] : counts.items()) {
    hist.counts[bits] = require_count(c, "count");
  }
  hist.validate();
  return hist;
}

json to_json(const QuasiDistribution& dist) {
  json weights = json::object();
  for (const auto& [bits, w] : dist.weights) {
    weights[bits] = w;
  }
  return json{{"n", dist.n}, {"weights", weights}};
}

QuasiDistribution quasi_from_json(const json& j) {
  QuasiDistribution dist;
  dist.n = require_count(require_field(j, "n"), "\"n\"");
  const json& weights = require_field(j, "weights");
  if (!weights.is_object()) {
    fail("parse", "field \"weights\" must be an object");
  }
  for (const auto& [bits, w] : weights.items()) {
    check_bitstring(bits, dist.n);
    if (!w.is_number()) {
      fail("parse", "weights must be numbers");
    }
    dist.weights[bits] = w.get<double>();
  }
  return dist;
}

json to_json(const NoiseModel& noise) {
  json readout = json::array();
  for (const auto& e : noise.readout) {
    readout.push_back(json::array({e[0], e[1]}));
  }
  return json{{"p1", noise.p1}, {"p2", noise.p2}, {"readout", readout}};
}

NoiseModel noise_from_json(const json& j) {
  if (!j.is_object()) {
    fail("parse", "noise model must be a JSON object");
  }
  NoiseModel noise;
  if (j.contains("p1")) {
    noise.p1 = require_number(j, "p1");
  }
  if (j.contains("p2")) {
    noise.p2 = require_number(j, "p2");
  }
  if (j.contains("readout")) {
    const json& readout = j.at("readout");
    if (!readout.is_array()) {
      fail("parse", "field \"readout\" must be an array of [e01, e10] pairs");
    }
    for (const json& pair : readout) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number()) {
        fail("parse", "readout entries must be [e01, e10] number pairs");
      }
      noise.readout.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  return noise;
}

json to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const Gate& gate : circuit.gates) {
    gates.push_back(json{{"kind", std::string(gate_kind_name(gate.kind))},
                         {"qubits", gate.qubits}});
  }
  json bases = json::array();
  for (char c : circuit.bases) {
    bases.push_back(std::string(1, c));
  }
  return json{{"n", circuit.n},
              {"label", circuit.label},
              {"gates", gates},
              {"bases", bases}};
}

Circuit circuit_from_json(const json& j) {
  Circuit circuit;
  circuit.n = require_count(require_field(j, "n"), "\"n\"");
  circuit.label = require_string(j, "label");
  const json& gates = require_field(j, "gates");
  if (!gates.is_array()) {
    fail("parse", "field \"gates\" must be an array");
  }
  for (const json& g : gates) {
    Gate gate;
    gate.kind = gate_kind_from_name(require_string(g, "kind"));
    const json& qubits = require_field(g, "qubits");
    if (!qubits.is_array()) {
      fail("parse", "gate \"qubits\" must be an array");
    }
    for (const json& q : qubits) {
      gate.qubits.push_back(require_count(q, "qubit index"));
    }
    circuit.gates.push_back(std::move(gate));
  }
  const json& bases = require_field(j, "bases");
  if (!bases.is_array()) {
    fail("parse", "field \"bases\" must be an array of basis letters");
  }
  for (const json& b : bases) {
    if (!b.is_string() || b.get<std::string>().size() != 1) {
      fail("parse", "basis entries must be single letters");
    }
    circuit.bases += b.get<std::string>();
  }
  circuit.validate();
  return circuit;
}

json to_json(const GameResult& result) {
  json per_circuit = json::object();
  for (const auto& [label, value] : result.per_circuit) {
    per_circuit[label] = value;
  }
  return json{{"game", result.game},
              {"win_probability", result.win_probability},
              {"win_probability_clamped", result.win_probability_clamped},
              {"threshold_classical", result.threshold_classical},
              {"per_circuit", per_circuit},
              {"std_error", result.std_error},
              {"mitigated", result.mitigated},
              {"repetitions", result.repetitions}};
}

GameResult game_result_from_json(const json& j) {
  GameResult result;
  result.game = require_string(j, "game");
  result.win_probability = require_number(j, "win_probability");
  result.win_probability_clamped = require_number(j, "win_probability_clamped");
  result.threshold_classical = require_number(j, "threshold_classical");
  const json& per_circuit = require_field(j, "per_circuit");
  if (!per_circuit.is_object()) {
    fail("parse", "field \"per_circuit\" must be an object");
  }
  for (const auto& [label, value] : per_circuit.items()) {
    if (!value.is_number()) {
      fail("parse", "per-circuit values must be numbers");
    }
    result.per_circuit[label] = value.get<double>();
  }
  result.std_error = require_number(j, "std_error");
  const json& mitigated = require_field(j, "mitigated");
  if (!mitigated.is_boolean()) {
    fail("parse", "field \"mitigated\" must be a boolean");
  }
  result.mitigated = mitigated.get<bool>();
  result.repetitions = require_count(require_field(j, "repetitions"),
                                     "\"repetitions\"");
  return result;
}

json confusion_to_json(const ConfusionSet& set) {
  json players = json::array();
  for (std::size_t p = 0; p < set.players.size(); ++p) {
    json matrix = json::array();
    for (const auto& row : set.players[p]) {
      matrix.push_back(json::array({row[0], row[1], row[2], row[3]}));
    }
    players.push_back(json{{"player", p + 1}, {"matrix", matrix}});
  }
  return players;
}

json lhv_report_to_json(const std::string& operator_label,
                        const LhvReport& report, double quantum_value,
                        double classical_threshold) {
  json assignment = json::object();
  for (std::size_t i = 0; i < report.first_maximizer.variables.size(); ++i) {
    const LhvVariable& var = report.first_maximizer.variables[i];
    std::string key(1, pauli_char(var.letter));
    key += std::to_string(var.qubit);
    assignment[key] = report.first_maximizer.values[i];
  }
  return json{{"operator", operator_label},
              {"lhv_max", report.max_value},
              {"quantum_value", quantum_value},
              {"classical_threshold", classical_threshold},
              {"maximizers", report.maximizer_count},
              {"example_assignment", assignment}};
}

std::string dump_json(const json& j) {
  // nlohmann's default object representation already sorts keys, which is
  // what makes identical data byte-identical on disk.
  return j.dump(2) + "\n";
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      fail("io", "cannot create " + path.parent_path().string() + ": " +
                     ec.message());
    }
  }
  std::ofstream out(path);
  if (!out) {
    fail("io", "cannot open " + path.string() + " for writing");
  }
  out << dump_json(j);
  if (!out) {
    fail("io", "failed while writing " + path.string());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail("io", "cannot open " + path.string());
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    fail("parse", "invalid JSON in " + path.string());
  }
  return j;
}

}  // namespace qgame
