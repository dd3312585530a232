#include "qgame/pauli.hpp"

#include <algorithm>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

// letter_table[a][b] = letter of a*b; exp_table[a][b] = exponent of i in a*b.
// Order I, X, Y, Z. XY = iZ, YZ = iX, ZX = iY; reversed pairs pick up -i.
constexpr Pauli kLetterTable[4][4] = {
    {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
    {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
    {Pauli::Y, Pauli::Z, Pauli::I, Pauli::X},
    {Pauli::Z, Pauli::Y, Pauli::X, Pauli::I},
};

constexpr std::uint8_t kExpTable[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

}  // namespace

char pauli_char(Pauli p) {
  constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      fail("parse", std::string("invalid Pauli letter '") + c + "'");
  }
}

int phase_sign(Phase p) {
  if (!phase_is_real(p)) {
    fail("invalid_observable", "phase is imaginary, expected +1 or -1");
  }
  return p == Phase::plus_one ? 1 : -1;
}

std::string phase_prefix(Phase p) {
  switch (p) {
    case Phase::plus_one:
      return "+";
    case Phase::plus_i:
      return "+i";
    case Phase::minus_one:
      return "-";
    case Phase::minus_i:
      return "-i";
  }
  return "+";
}

PauliString::PauliString(std::size_t n)
    : phase_(Phase::plus_one), letters_(n, Pauli::I) {}

PauliString::PauliString(Phase phase, std::vector<Pauli> letters)
    : phase_(phase), letters_(std::move(letters)) {}

PauliString PauliString::parse(std::string_view text) {
  Phase phase = Phase::plus_one;
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = Phase::plus_i;
    ++pos;
  }
  if (negative) {
    phase = phase_mul(phase, Phase::minus_one);
  }
  if (pos == text.size()) {
    fail("parse", "Pauli string has no letters: '" + std::string(text) + "'");
  }
  std::vector<Pauli> letters;
  letters.reserve(text.size() - pos);
  for (; pos < text.size(); ++pos) {
    letters.push_back(pauli_from_char(text[pos]));
  }
  return PauliString(phase, std::move(letters));
}

PauliString PauliString::single(std::size_t n, std::size_t qubit,
                                Pauli letter) {
  if (qubit < 1 || qubit > n) {
    fail("dimension", "qubit index " + std::to_string(qubit) +
                          " out of range 1.." + std::to_string(n));
  }
  std::vector<Pauli> letters(n, Pauli::I);
  letters[qubit - 1] = letter;
  return PauliString(Phase::plus_one, std::move(letters));
}

Pauli PauliString::letter(std::size_t qubit) const {
  if (qubit < 1 || qubit > letters_.size()) {
    fail("dimension", "qubit index " + std::to_string(qubit) +
                          " out of range 1.." + std::to_string(letters_.size()));
  }
  return letters_[qubit - 1];
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> result;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != Pauli::I) {
      result.push_back(q + 1);
    }
  }
  return result;
}

std::string PauliString::str() const {
  std::string s = phase_prefix(phase_);
  s.reserve(s.size() + letters_.size());
  for (Pauli p : letters_) {
    s.push_back(pauli_char(p));
  }
  return s;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    fail("dimension", "Pauli string lengths differ: " +
                          std::to_string(a.num_qubits()) + " vs " +
                          std::to_string(b.num_qubits()));
  }
  int exp = static_cast<int>(a.phase()) + static_cast<int>(b.phase());
  std::vector<Pauli> letters(a.num_qubits());
  for (std::size_t q = 0; q < letters.size(); ++q) {
    int la = static_cast<int>(a.letters()[q]);
    int lb = static_cast<int>(b.letters()[q]);
    letters[q] = kLetterTable[la][lb];
    exp += kExpTable[la][lb];
  }
  return PauliString(static_cast<Phase>(exp & 3), std::move(letters));
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    fail("dimension", "Pauli string lengths differ");
  }
  int anticommuting = 0;
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    Pauli la = a.letters()[q];
    Pauli lb = b.letters()[q];
    if (la != Pauli::I && lb != Pauli::I && la != lb) {
      ++anticommuting;
    }
  }
  return (anticommuting & 1) == 0;
}

StabilizerSet cluster_stabilizers(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    fail("unsupported_size",
         "ring cluster stabilizers need an even qubit count >= 4, got " +
             std::to_string(n));
  }
  StabilizerSet set;
  set.n = n;
  set.generators.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Pauli> letters(n, Pauli::I);
    std::size_t left = i == 1 ? n : i - 1;
    std::size_t right = i == n ? 1 : i + 1;
    letters[left - 1] = Pauli::Z;
    letters[i - 1] = Pauli::X;
    letters[right - 1] = Pauli::Z;
    set.generators.emplace_back(Phase::plus_one, std::move(letters));
  }
  return set;
}

PauliString stabilizer_product(const StabilizerSet& set, std::uint64_t mask) {
  PauliString result(set.n);
  for (std::size_t i = 1; i <= set.n; ++i) {
    if (mask & (std::uint64_t{1} << (i - 1))) {
      result = pauli_mul(result, set.generators[i - 1]);
    }
  }
  return result;
}

std::vector<std::pair<std::uint64_t, PauliString>> enumerate_products(
    const StabilizerSet& set) {
  if (set.n > 24) {
    fail("enumeration_limit", "2^" + std::to_string(set.n) +
                                  " products exceed the enumeration guard");
  }
  std::vector<std::pair<std::uint64_t, PauliString>> result;
  const std::uint64_t total = std::uint64_t{1} << set.n;
  result.reserve(total);
  result.emplace_back(0, PauliString(set.n));
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    // Strip the lowest set bit; its product is already computed.
    std::uint64_t rest = mask & (mask - 1);
    std::size_t lowest = static_cast<std::size_t>(__builtin_ctzll(mask));
    result.emplace_back(
        mask, pauli_mul(result[rest].second, set.generators[lowest]));
  }
  return result;
}

}  // namespace qgame
