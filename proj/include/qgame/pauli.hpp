#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgame {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Exact phase group {+1, +i, -1, -i}, stored as the exponent of i.
enum class Phase : std::uint8_t {
  plus_one = 0,
  plus_i = 1,
  minus_one = 2,
  minus_i = 3,
};

inline Phase phase_mul(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<int>(a) + static_cast<int>(b)) & 3);
}

inline bool phase_is_real(Phase p) {
  return p == Phase::plus_one || p == Phase::minus_one;
}

// +1 or -1; rejects imaginary phases.
int phase_sign(Phase p);

std::string phase_prefix(Phase p);

// Phase times a tensor product of single-qubit Pauli letters. Qubit indices
// are 1-based throughout, matching the s_1..s_n naming of the generators.
// Immutable after construction.
class PauliString {
 public:
  // Identity on n qubits, phase +1.
  explicit PauliString(std::size_t n);

  PauliString(Phase phase, std::vector<Pauli> letters);

  // Text form: optional sign ("+", "-", "+i", "-i"), then one letter per
  // qubit, qubit 1 leftmost. E.g. "-YXYIXI". Round-trips exactly with str().
  static PauliString parse(std::string_view text);

  // Single-letter string: `letter` on `qubit`, identity elsewhere.
  static PauliString single(std::size_t n, std::size_t qubit, Pauli letter);

  std::size_t num_qubits() const { return letters_.size(); }
  Phase phase() const { return phase_; }
  Pauli letter(std::size_t qubit) const;  // 1-based
  const std::vector<Pauli>& letters() const { return letters_; }

  bool is_identity() const;

  // 1-based indices of qubits with a non-I letter, ascending.
  std::vector<std::size_t> support() const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  Phase phase_ = Phase::plus_one;
  std::vector<Pauli> letters_;
};

// Exact operator product a*b with the accumulated phase (XY = iZ etc.).
PauliString pauli_mul(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

// Ring cluster-state stabilizer generators s_i = Z_{i-1} X_i Z_{i+1} with
// periodic indices (Z_0 = Z_n, Z_{n+1} = Z_1). generators[i-1] is s_i.
struct StabilizerSet {
  std::size_t n = 0;
  std::vector<PauliString> generators;
};

StabilizerSet cluster_stabilizers(std::size_t n);

// Product of the generators selected by `mask` (bit i-1 picks s_i), in
// ascending index order. Empty mask gives the identity. The result's phase
// is always +1 or -1.
PauliString stabilizer_product(const StabilizerSet& set, std::uint64_t mask);

// All 2^n products in ascending mask order.
std::vector<std::pair<std::uint64_t, PauliString>> enumerate_products(
    const StabilizerSet& set);

}  // namespace qgame
