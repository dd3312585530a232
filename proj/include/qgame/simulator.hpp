#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/circuits.hpp"
#include "qgame/hist.hpp"
#include "qgame/pauli.hpp"
#include "qgame/rng.hpp"

namespace qgame {

/// Error rates for the Monte-Carlo noise channel. `p1`/`p2` are the
/// probabilities of a uniformly random non-identity Pauli after each one-
/// and two-qubit gate; `readout[q-1] = {e01, e10}` gives, per qubit, the
/// chance of reading 1 for a true 0 and 0 for a true 1. An empty readout
/// vector means ideal readout.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  std::vector<std::array<double, 2>> readout;

  bool gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
  bool readout_noise() const;
  /// Throws Error("config") for rates outside [0, 1] or a readout table
  /// whose length disagrees with `n`.
  void validate(std::size_t n) const;
};

/// Dense state vector on up to 12 qubits. Qubit 1 is the most significant
/// bit of the amplitude index, matching the leftmost character of outcome
/// bitstrings everywhere else in this library.
class StateVector {
 public:
  /// |0...0> on `n` qubits.
  explicit StateVector(std::size_t n);
  /// The computational basis state with the given amplitude index.
  static StateVector basis_state(std::size_t n, std::uint64_t index);

  std::size_t num_qubits() const { return n_; }
  std::uint64_t dim() const { return amps_.size(); }
  std::complex<double>& operator[](std::uint64_t i) { return amps_[i]; }
  const std::complex<double>& operator[](std::uint64_t i) const {
    return amps_[i];
  }

  void apply_gate(const Gate& gate);
  void apply_pauli(std::size_t qubit, Pauli letter);

  /// <this|other>.
  std::complex<double> inner(const StateVector& other) const;
  double norm() const;

 private:
  std::size_t n_;
  std::vector<std::complex<double>> amps_;
};

std::string bitstring_of_index(std::uint64_t index, std::size_t n);
std::uint64_t index_of_bitstring(std::string_view bits);

/// Applies the circuit to |0...0> with no noise.
StateVector run_circuit(const Circuit& circuit);

/// One noisy run: after each gate a random Pauli is injected on the gate's
/// qubits with probability p1 (one-qubit gates, 3 choices) or p2 (two-qubit
/// gates, 15 choices). Averaging trajectories reproduces the depolarizing
/// channel.
StateVector run_trajectory(const Circuit& circuit, const NoiseModel& noise,
                           SplitRng& rng);

/// <state|observable|state>. The observable's phase must be +1 or -1.
double expectation(const StateVector& state, const PauliString& observable);

/// Born probabilities keyed by bitstring; exact zeros are omitted.
QuasiDistribution exact_distribution(const StateVector& state);

/// Pushes a distribution through the readout-flip channel analytically
/// (used by the exact scoring path, where no sampling happens).
QuasiDistribution apply_readout(const QuasiDistribution& dist,
                                const NoiseModel& noise);

/// Samples `shots` outcomes. With gate noise every shot runs its own
/// trajectory; readout errors are applied per shot and per qubit.
Histogram sample_counts(const Circuit& circuit, std::uint64_t shots,
                        const NoiseModel& noise, SplitRng& rng);

}  // namespace qgame
