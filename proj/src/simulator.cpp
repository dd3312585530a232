#include "qgame/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

constexpr std::size_t kMaxQubits = 12;
constexpr std::complex<double> kI{0.0, 1.0};

// Bit position of 1-based qubit q in an amplitude index: qubit 1 is the
// most significant bit, so the leftmost character of a bitstring.
std::uint64_t bit_mask(std::size_t n, std::size_t q) {
  return std::uint64_t{1} << (n - q);
}

}  // namespace

bool NoiseModel::readout_noise() const {
  return std::any_of(readout.begin(), readout.end(), [](const auto& e) {
    return e[0] > 0.0 || e[1] > 0.0;
  });
}

void NoiseModel::validate(std::size_t n) const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(p1) || !in_unit(p2)) {
    fail("config", "gate error probabilities must lie in [0, 1]");
  }
  if (!readout.empty() && readout.size() != n) {
    fail("config", "readout table has " + std::to_string(readout.size()) +
                       " entries for " + std::to_string(n) + " qubits");
  }
  for (const auto& e : readout) {
    if (!in_unit(e[0]) || !in_unit(e[1])) {
      fail("config", "readout error probabilities must lie in [0, 1]");
    }
  }
}

StateVector::StateVector(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxQubits) {
    fail("unsupported_size", "state vector supports 1.." +
                                 std::to_string(kMaxQubits) + " qubits, got " +
                                 std::to_string(n));
  }
  amps_.assign(std::uint64_t{1} << n, {0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(std::size_t n, std::uint64_t index) {
  StateVector state(n);
  if (index >= state.dim()) {
    fail("dimension", "basis index out of range");
  }
  state.amps_[0] = 0.0;
  state.amps_[index] = 1.0;
  return state;
}

void StateVector::apply_gate(const Gate& gate) {
  const std::uint64_t d = dim();
  switch (gate.kind) {
    case GateKind::H: {
      const std::uint64_t m = bit_mask(n_, gate.qubits[0]);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (std::uint64_t i = 0; i < d; ++i) {
        if (i & m) {
          continue;
        }
        const auto a0 = amps_[i];
        const auto a1 = amps_[i | m];
        amps_[i] = (a0 + a1) * inv_sqrt2;
        amps_[i | m] = (a0 - a1) * inv_sqrt2;
      }
      return;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      const std::uint64_t m = bit_mask(n_, gate.qubits[0]);
      const auto factor = (gate.kind == GateKind::S) ? kI : -kI;
      for (std::uint64_t i = 0; i < d; ++i) {
        if (i & m) {
          amps_[i] *= factor;
        }
      }
      return;
    }
    case GateKind::X:
      apply_pauli(gate.qubits[0], Pauli::X);
      return;
    case GateKind::CZ: {
      const std::uint64_t m =
          bit_mask(n_, gate.qubits[0]) | bit_mask(n_, gate.qubits[1]);
      for (std::uint64_t i = 0; i < d; ++i) {
        if ((i & m) == m) {
          amps_[i] = -amps_[i];
        }
      }
      return;
    }
    case GateKind::CNOT: {
      const std::uint64_t mc = bit_mask(n_, gate.qubits[0]);
      const std::uint64_t mt = bit_mask(n_, gate.qubits[1]);
      for (std::uint64_t i = 0; i < d; ++i) {
        if ((i & mc) && !(i & mt)) {
          std::swap(amps_[i], amps_[i | mt]);
        }
      }
      return;
    }
  }
  fail("gate", "unreachable gate kind");
}

void StateVector::apply_pauli(std::size_t qubit, Pauli letter) {
  if (letter == Pauli::I) {
    return;
  }
  const std::uint64_t m = bit_mask(n_, qubit);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    if (i & m) {
      continue;
    }
    auto& a0 = amps_[i];
    auto& a1 = amps_[i | m];
    switch (letter) {
      case Pauli::X:
        std::swap(a0, a1);
        break;
      case Pauli::Y: {
        const auto t = a0;
        a0 = -kI * a1;
        a1 = kI * t;
        break;
      }
      case Pauli::Z:
        a1 = -a1;
        break;
      case Pauli::I:
        break;
    }
  }
}

std::complex<double> StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) {
    fail("dimension", "inner product of states with different qubit counts");
  }
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t i = 0; i < dim(); ++i) {
    sum += std::conj(amps_[i]) * other.amps_[i];
  }
  return sum;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) {
    sum += std::norm(a);
  }
  return std::sqrt(sum);
}

std::string bitstring_of_index(std::uint64_t index, std::size_t n) {
  std::string bits(n, '0');
  for (std::size_t q = 1; q <= n; ++q) {
    if (index & bit_mask(n, q)) {
      bits[q - 1] = '1';
    }
  }
  return bits;
}

std::uint64_t index_of_bitstring(std::string_view bits) {
  check_bitstring(bits, bits.size());
  std::uint64_t index = 0;
  for (char c : bits) {
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return index;
}

StateVector run_circuit(const Circuit& circuit) {
  circuit.validate();
  StateVector state(circuit.n);
  for (const Gate& gate : circuit.gates) {
    state.apply_gate(gate);
  }
  return state;
}

namespace {

// Uniform non-identity Pauli on one qubit: 3 choices.
void inject_one(StateVector& state, std::size_t qubit, SplitRng& rng) {
  static constexpr Pauli kChoices[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  state.apply_pauli(qubit, kChoices[rng.uniform_below(3)]);
}

// Uniform non-identity Pauli pair on two qubits: 15 choices.
void inject_two(StateVector& state, std::size_t qa, std::size_t qb,
                SplitRng& rng) {
  const std::uint64_t pick = rng.uniform_below(15) + 1;  // 1..15, II excluded
  state.apply_pauli(qa, static_cast<Pauli>(pick / 4));
  state.apply_pauli(qb, static_cast<Pauli>(pick % 4));
}

}  // namespace

namespace {

// CDF walk. Zero-probability outcomes are skipped even as the fallback for
// accumulated rounding, so an outcome with exact probability 0 is never
// drawn.
std::uint64_t draw_index(const std::vector<double>& probs, SplitRng& rng) {
  const double r = rng.uniform();
  double acc = 0.0;
  std::uint64_t fallback = 0;
  for (std::uint64_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) {
      continue;
    }
    acc += probs[i];
    fallback = i;
    if (r < acc) {
      return i;
    }
  }
  return fallback;
}

}  // namespace

StateVector run_trajectory(const Circuit& circuit, const NoiseModel& noise,
                           SplitRng& rng) {
  circuit.validate();
  noise.validate(circuit.n);
  StateVector state(circuit.n);
  for (const Gate& gate : circuit.gates) {
    state.apply_gate(gate);
    if (gate.qubits.size() == 1) {
      if (noise.p1 > 0.0 && rng.uniform() < noise.p1) {
        inject_one(state, gate.qubits[0], rng);
      }
    } else {
      if (noise.p2 > 0.0 && rng.uniform() < noise.p2) {
        inject_two(state, gate.qubits[0], gate.qubits[1], rng);
      }
    }
  }
  return state;
}

double expectation(const StateVector& state, const PauliString& observable) {
  if (observable.num_qubits() != state.num_qubits()) {
    fail("dimension", "observable acts on " +
                          std::to_string(observable.num_qubits()) +
                          " qubits, state has " +
                          std::to_string(state.num_qubits()));
  }
  const int sign = phase_sign(observable.phase());
  StateVector rotated = state;
  for (std::size_t q : observable.support()) {
    rotated.apply_pauli(q, observable.letter(q));
  }
  return sign * state.inner(rotated).real();
}

QuasiDistribution exact_distribution(const StateVector& state) {
  QuasiDistribution dist;
  dist.n = state.num_qubits();
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    if (p != 0.0) {
      dist.weights[bitstring_of_index(i, dist.n)] = p;
    }
  }
  return dist;
}

QuasiDistribution apply_readout(const QuasiDistribution& dist,
                                const NoiseModel& noise) {
  noise.validate(dist.n);
  if (noise.readout.empty()) {
    return dist;
  }
  QuasiDistribution current = dist;
  for (std::size_t q = 1; q <= dist.n; ++q) {
    const double e01 = noise.readout[q - 1][0];
    const double e10 = noise.readout[q - 1][1];
    if (e01 == 0.0 && e10 == 0.0) {
      continue;
    }
    QuasiDistribution next;
    next.n = dist.n;
    for (const auto& [bits, w] : current.weights) {
      check_bitstring(bits, dist.n);
      const bool one = bits[q - 1] == '1';
      const double flip = one ? e10 : e01;
      std::string flipped = bits;
      flipped[q - 1] = one ? '0' : '1';
      next.weights[bits] += w * (1.0 - flip);
      next.weights[flipped] += w * flip;
    }
    current = std::move(next);
  }
  return current;
}

Histogram sample_counts(const Circuit& circuit, std::uint64_t shots,
                        const NoiseModel& noise, SplitRng& rng) {
  circuit.validate();
  noise.validate(circuit.n);
  if (shots == 0) {
    fail("config", "shot count must be positive");
  }

  const std::size_t n = circuit.n;
  Histogram hist;
  hist.n = n;
  hist.shots = shots;

  // Noiseless-gate fast path: one state, many draws from its distribution.
  std::vector<double> probs;
  if (!noise.gate_noise()) {
    const StateVector clean = run_circuit(circuit);
    probs.resize(clean.dim());
    for (std::uint64_t i = 0; i < clean.dim(); ++i) {
      probs[i] = std::norm(clean[i]);
    }
  }

  std::vector<double> traj_probs;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::uint64_t outcome = 0;
    if (noise.gate_noise()) {
      const StateVector state = run_trajectory(circuit, noise, rng);
      traj_probs.resize(state.dim());
      for (std::uint64_t i = 0; i < state.dim(); ++i) {
        traj_probs[i] = std::norm(state[i]);
      }
      outcome = draw_index(traj_probs, rng);
    } else {
      outcome = draw_index(probs, rng);
    }
    if (!noise.readout.empty()) {
      for (std::size_t q = 1; q <= n; ++q) {
        const bool one = outcome & (std::uint64_t{1} << (n - q));
        const double flip =
            one ? noise.readout[q - 1][1] : noise.readout[q - 1][0];
        if (flip > 0.0 && rng.uniform() < flip) {
          outcome ^= std::uint64_t{1} << (n - q);
        }
      }
    }
    ++hist.counts[bitstring_of_index(outcome, n)];
  }
  return hist;
}

}  // namespace qgame
