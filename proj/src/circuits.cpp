#include "qgame/circuits.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

constexpr std::array<std::string_view, 6> kGateNames = {"H",  "S",  "Sdg",
                                                        "X",  "CZ", "CNOT"};

std::size_t gate_arity(GateKind kind) {
  return (kind == GateKind::CZ || kind == GateKind::CNOT) ? 2 : 1;
}

bool touches(const Gate& gate, std::size_t qubit) {
  return std::find(gate.qubits.begin(), gate.qubits.end(), qubit) !=
         gate.qubits.end();
}

char basis_for_letter(Pauli letter) {
  switch (letter) {
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    // An identity factor leaves the qubit unused by scoring; reading it in
    // Z keeps the circuit uniform.
    case Pauli::Z:
    case Pauli::I:
      return 'Z';
  }
  fail("gate", "unreachable Pauli letter");
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
  return kGateNames[static_cast<std::size_t>(kind)];
}

GateKind gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) {
      return static_cast<GateKind>(i);
    }
  }
  fail("parse", "unknown gate kind '" + std::string(name) + "'");
}

void Circuit::validate() const {
  if (n == 0) {
    fail("dimension", "circuit has zero qubits");
  }
  if (!bases.empty()) {
    if (bases.size() != n) {
      fail("dimension", "basis string length " + std::to_string(bases.size()) +
                            " does not match " + std::to_string(n) +
                            " qubits");
    }
    for (char c : bases) {
      if (c != 'X' && c != 'Y' && c != 'Z') {
        fail("parse", std::string("invalid basis character '") + c + "'");
      }
    }
  }
  for (const Gate& gate : gates) {
    if (gate.qubits.size() != gate_arity(gate.kind)) {
      fail("gate", std::string(gate_kind_name(gate.kind)) + " expects " +
                       std::to_string(gate_arity(gate.kind)) + " qubits");
    }
    for (std::size_t q : gate.qubits) {
      if (q < 1 || q > n) {
        fail("gate", "qubit index " + std::to_string(q) +
                         " outside 1.." + std::to_string(n));
      }
    }
    if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
      fail("gate", std::string(gate_kind_name(gate.kind)) +
                       " needs two distinct qubits");
    }
  }
}

Circuit build_cluster_prep(std::size_t n) {
  if (n < 3) {
    fail("unsupported_size", "ring cluster needs at least 3 qubits");
  }
  Circuit circuit;
  circuit.n = n;
  for (std::size_t q = 1; q <= n; ++q) {
    circuit.gates.push_back({GateKind::H, {q}});
  }
  for (std::size_t q = 1; q <= n; ++q) {
    circuit.gates.push_back({GateKind::CZ, {q, q % n + 1}});
  }
  return circuit;
}

void attach_measurement_bases(Circuit& circuit, std::string_view bases) {
  if (bases.size() != circuit.n) {
    fail("dimension", "basis string length " + std::to_string(bases.size()) +
                          " does not match " + std::to_string(circuit.n) +
                          " qubits");
  }
  // Y first (Sdg maps Y to X), then one H layer folds X onto Z. Doing the
  // two passes separately keeps the H layer contiguous for the optimizer.
  for (std::size_t q = 1; q <= circuit.n; ++q) {
    char c = bases[q - 1];
    if (c != 'X' && c != 'Y' && c != 'Z') {
      fail("parse", std::string("invalid basis character '") + c + "'");
    }
    if (c == 'Y') {
      circuit.gates.push_back({GateKind::Sdg, {q}});
    }
  }
  for (std::size_t q = 1; q <= circuit.n; ++q) {
    if (bases[q - 1] != 'Z') {
      circuit.gates.push_back({GateKind::H, {q}});
    }
  }
  circuit.bases.assign(bases.begin(), bases.end());
}

std::vector<Circuit> build_triangle_circuits() {
  std::vector<Circuit> circuits;
  for (unsigned coin = 0; coin < 8; ++coin) {
    std::string bits(3, '0');
    for (unsigned i = 0; i < 3; ++i) {
      bits[i] = (coin >> (2 - i)) & 1 ? '1' : '0';
    }
    std::string bases(6, 'X');
    for (unsigned i = 0; i < 3; ++i) {
      if (bits[i] == '1') {
        bases[2 * i] = 'Y';  // player i's odd qubit
      }
    }
    Circuit circuit = build_cluster_prep(6);
    circuit.label = "triangle/" + bits;
    attach_measurement_bases(circuit, bases);
    circuits.push_back(std::move(circuit));
  }
  return circuits;
}

std::vector<Circuit> build_calibration_circuits(std::size_t n) {
  if (n == 0) {
    fail("dimension", "circuit has zero qubits");
  }
  // All-zeros, the two alternating patterns, all-ones: enough to expose
  // both flip directions on every qubit and both neighbour contexts.
  std::vector<std::string> patterns;
  patterns.push_back(std::string(n, '0'));
  std::string alt(n, '0');
  for (std::size_t q = 1; q < n; q += 2) {
    alt[q] = '1';
  }
  patterns.push_back(alt);
  for (char& c : alt) {
    c = (c == '0') ? '1' : '0';
  }
  patterns.push_back(alt);
  patterns.push_back(std::string(n, '1'));

  std::vector<Circuit> circuits;
  for (const std::string& bits : patterns) {
    Circuit circuit;
    circuit.n = n;
    circuit.label = "cal/" + bits;
    for (std::size_t q = 1; q <= n; ++q) {
      if (bits[q - 1] == '1') {
        circuit.gates.push_back({GateKind::X, {q}});
      }
    }
    circuit.bases = std::string(n, 'Z');
    circuits.push_back(std::move(circuit));
  }
  return circuits;
}

std::vector<Circuit> build_bell_circuits(const BellGameSpec& spec) {
  std::vector<Circuit> circuits;
  for (const PauliString& term : spec.terms) {
    if (term.is_identity()) {
      continue;  // scored as a constant, nothing to run
    }
    if (!phase_is_real(term.phase())) {
      fail("invalid_term",
           "term " + term.str() + " has an imaginary phase");
    }
    std::string bases(term.num_qubits(), 'Z');
    for (std::size_t q = 1; q <= term.num_qubits(); ++q) {
      bases[q - 1] = basis_for_letter(term.letter(q));
    }
    Circuit circuit = build_cluster_prep(term.num_qubits());
    circuit.label = "bell/" + spec.label + "/" + term.str();
    attach_measurement_bases(circuit, bases);
    circuits.push_back(std::move(circuit));
  }
  return circuits;
}

Circuit optimize(const Circuit& circuit) {
  circuit.validate();
  Circuit out;
  out.n = circuit.n;
  out.label = circuit.label;
  out.bases = circuit.bases;

  // Pass 1: CZ -> H CNOT H. Targeting the even-indexed qubit lines the
  // conjugating H up with the preparation and measurement H layers of the
  // ring circuits, which is what makes pass 2 productive.
  for (const Gate& gate : circuit.gates) {
    if (gate.kind != GateKind::CZ) {
      out.gates.push_back(gate);
      continue;
    }
    std::size_t a = gate.qubits[0];
    std::size_t b = gate.qubits[1];
    std::size_t target = (a % 2 == 0) ? a : b;
    std::size_t control = (target == a) ? b : a;
    out.gates.push_back({GateKind::H, {target}});
    out.gates.push_back({GateKind::CNOT, {control, target}});
    out.gates.push_back({GateKind::H, {target}});
  }

  // Pass 2: cancel H pairs that are adjacent on their qubit's wire, i.e.
  // with no gate touching that qubit in between. Repeat until settled.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.gates.size() && !changed; ++i) {
      if (out.gates[i].kind != GateKind::H) {
        continue;
      }
      std::size_t q = out.gates[i].qubits[0];
      for (std::size_t j = i + 1; j < out.gates.size(); ++j) {
        if (!touches(out.gates[j], q)) {
          continue;
        }
        if (out.gates[j].kind == GateKind::H) {
          out.gates.erase(out.gates.begin() + static_cast<std::ptrdiff_t>(j));
          out.gates.erase(out.gates.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
        break;
      }
    }
  }
  return out;
}

std::size_t count_gates(const Circuit& circuit, GateKind kind) {
  return static_cast<std::size_t>(
      std::count_if(circuit.gates.begin(), circuit.gates.end(),
                    [&](const Gate& g) { return g.kind == kind; }));
}

}  // namespace qgame
