#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/games.hpp"
#include "qgame/pauli.hpp"

namespace qgame {

/// Gate vocabulary. Everything the builders emit reduces to this set, and
/// the simulator implements exactly this set.
enum class GateKind { H, S, Sdg, X, CZ, CNOT };

std::string_view gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

/// One gate application. `qubits` uses 1-based indices; one entry for the
/// single-qubit kinds, two for CZ (symmetric) and CNOT (control, target).
struct Gate {
  GateKind kind;
  std::vector<std::size_t> qubits;

  bool operator==(const Gate&) const = default;
};

/// A straight-line circuit on `n` qubits plus the measurement basis per
/// qubit ('X', 'Y' or 'Z', qubit 1 first). The basis rotations are already
/// part of `gates`; `bases` is kept so scoring and export know what the
/// final Z-measurement of each qubit means.
struct Circuit {
  std::size_t n = 0;
  std::string label;
  std::vector<Gate> gates;
  std::string bases;

  /// Throws Error("dimension"/"gate") if an index is out of range, a gate
  /// has the wrong arity, or `bases` disagrees with `n`.
  void validate() const;
};

/// Ring cluster state preparation: H on every qubit, then CZ on each
/// nearest-neighbour pair including the closing (n, 1) link.
Circuit build_cluster_prep(std::size_t n);

/// Appends the rotations that turn a Z measurement into a measurement in
/// `bases` (Sdg for 'Y' qubits, then H for 'X' and 'Y' qubits) and records
/// the basis string on the circuit.
void attach_measurement_bases(Circuit& circuit, std::string_view bases);

/// The eight coin-indexed circuits of the triangle game, labelled
/// "triangle/<coin>". Player i holds qubits 2i-1 and 2i; coin bit 1 moves
/// the odd qubit from X to Y, the even qubit always measures X.
std::vector<Circuit> build_triangle_circuits();

/// Computational-basis preparation circuits used to estimate readout
/// confusion, labelled "cal/<bits>": X on every qubit whose bit is 1,
/// measured straight in Z.
std::vector<Circuit> build_calibration_circuits(std::size_t n);

/// One circuit per non-identity term of `spec`, labelled
/// "bell/<spec.label>/<term>": cluster preparation plus the basis given by
/// each qubit's letter (I measures Z and is ignored by scoring). Terms
/// with an imaginary phase are rejected with Error("invalid_term").
std::vector<Circuit> build_bell_circuits(const BellGameSpec& spec);

/// Peephole pass: each CZ becomes H-CNOT-H targeting the even-indexed
/// qubit of the pair, then adjacent H pairs on the same qubit cancel until
/// nothing changes. Preserves the circuit's unitary; on circuits produced
/// by the builders above it never increases the gate count.
Circuit optimize(const Circuit& circuit);

/// Number of gates of one kind (helper for tests and reports).
std::size_t count_gates(const Circuit& circuit, GateKind kind);

}  // namespace qgame
