#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgame/games.hpp"
#include "qgame/pauli.hpp"

namespace qgame {

/// One classical hidden variable: a fixed +/-1 answer a player would give
/// for measuring `letter` on `qubit`.
struct LhvVariable {
  std::size_t qubit = 0;  // 1-based
  Pauli letter = Pauli::I;

  bool operator==(const LhvVariable&) const = default;
  bool operator<(const LhvVariable& other) const {
    return qubit != other.qubit ? qubit < other.qubit
                                : static_cast<int>(letter) <
                                      static_cast<int>(other.letter);
  }
};

/// A deterministic classical strategy: one +/-1 value per variable.
/// `variables` is sorted ascending by (qubit, letter) and `values` runs
/// parallel to it.
struct LhvAssignment {
  std::vector<LhvVariable> variables;
  std::vector<int> values;

  /// The assigned value, or Error("assignment") for a variable the
  /// strategy does not cover.
  int value(std::size_t qubit, Pauli letter) const;
};

/// Exhaustive-search result. `maximizer_count` counts all optimal
/// assignments; `first_maximizer` is the lexicographically smallest one
/// (+1 sorting before -1, variables in ascending order).
struct LhvReport {
  double max_value = 0.0;
  std::uint64_t maximizer_count = 0;
  LhvAssignment first_maximizer;
  std::size_t variable_count = 0;
};

/// The distinct (qubit, letter) pairs appearing across the terms, sorted.
/// More than 24 variables fails with Error("enumeration_limit") before
/// the 2^V scan starts.
std::vector<LhvVariable> collect_variables(
    const std::vector<PauliString>& terms);

/// The assignment encoded by `mask`: variable j reads bit (V-1-j), bit 0
/// meaning +1, so ascending masks scan assignments in lexicographic
/// order.
LhvAssignment assignment_from_mask(const std::vector<LhvVariable>& variables,
                                   std::uint64_t mask);

/// Brute-force maximum of sum_t sign_t * prod(values) over all
/// deterministic strategies. `partitions` splits the assignment space into
/// that many contiguous chunks scanned independently and merged; the result
/// is identical for every partitioning (the merge is associative), which
/// is what makes the scan safe to parallelize.
LhvReport max_lhv_bell(const BellGameSpec& spec, std::size_t partitions = 1);

/// Brute-force maximum of the coin-averaged win probability over all
/// deterministic strategies.
LhvReport max_lhv_triangle(const TriangleGameSpec& spec,
                           std::size_t partitions = 1);

}  // namespace qgame
