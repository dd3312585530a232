#include "qgame/lhv.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

constexpr std::size_t kMaxVariables = 24;

// Bitmask over the variable list for one observable's support.
std::uint64_t term_mask(const PauliString& term,
                        const std::vector<LhvVariable>& variables) {
  std::uint64_t mask = 0;
  for (std::size_t q : term.support()) {
    const LhvVariable var{q, term.letter(q)};
    const auto it =
        std::lower_bound(variables.begin(), variables.end(), var);
    // collect_variables saw every term, so the variable must be present.
    mask |= std::uint64_t{1}
            << (variables.size() - 1 -
                static_cast<std::size_t>(it - variables.begin()));
  }
  return mask;
}

int parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1 : 1;
}

// Running best over an ascending mask scan; keeping the first mask seen
// makes the reported maximizer the lexicographically smallest one.
struct ScanBest {
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  std::uint64_t first = 0;

  void offer(double value, std::uint64_t mask) {
    if (value > best) {
      best = value;
      count = 1;
      first = mask;
    } else if (value == best) {
      ++count;
    }
  }

  // Associative combine of two adjacent chunks, `*this` covering the lower
  // mask range. Chunk boundaries cannot change the result.
  void merge(const ScanBest& later) {
    if (later.best > best) {
      *this = later;
    } else if (later.best == best) {
      count += later.count;
    }
  }
};

// Scans [0, 2^V) in `partitions` contiguous chunks and merges.
template <typename Value>
ScanBest partitioned_scan(std::size_t num_variables, std::size_t partitions,
                          Value&& value_of) {
  const std::uint64_t limit = std::uint64_t{1} << num_variables;
  if (partitions < 1) {
    partitions = 1;
  }
  if (partitions > limit) {
    partitions = static_cast<std::size_t>(limit);
  }
  ScanBest total;
  bool first_chunk = true;
  for (std::size_t c = 0; c < partitions; ++c) {
    const std::uint64_t lo = limit / partitions * c + std::min<std::uint64_t>(c, limit % partitions);
    const std::uint64_t hi =
        limit / partitions * (c + 1) + std::min<std::uint64_t>(c + 1, limit % partitions);
    ScanBest chunk;
    for (std::uint64_t m = lo; m < hi; ++m) {
      chunk.offer(value_of(m), m);
    }
    if (first_chunk) {
      total = chunk;
      first_chunk = false;
    } else {
      total.merge(chunk);
    }
  }
  return total;
}

LhvReport report_from(const ScanBest& best,
                      const std::vector<LhvVariable>& variables) {
  LhvReport report;
  report.max_value = best.best;
  report.maximizer_count = best.count;
  report.first_maximizer = assignment_from_mask(variables, best.first);
  report.variable_count = variables.size();
  return report;
}

}  // namespace

int LhvAssignment::value(std::size_t qubit, Pauli letter) const {
  for (std::size_t j = 0; j < variables.size(); ++j) {
    if (variables[j].qubit == qubit && variables[j].letter == letter) {
      return values[j];
    }
  }
  fail("assignment", "no value assigned for qubit " + std::to_string(qubit));
}

std::vector<LhvVariable> collect_variables(
    const std::vector<PauliString>& terms) {
  std::set<LhvVariable> seen;
  for (const PauliString& term : terms) {
    for (std::size_t q : term.support()) {
      seen.insert({q, term.letter(q)});
    }
  }
  if (seen.size() > kMaxVariables) {
    fail("enumeration_limit",
         std::to_string(seen.size()) + " hidden variables exceed the 2^" +
             std::to_string(kMaxVariables) + " search limit");
  }
  return {seen.begin(), seen.end()};
}

LhvAssignment assignment_from_mask(const std::vector<LhvVariable>& variables,
                                   std::uint64_t mask) {
  LhvAssignment assignment;
  assignment.variables = variables;
  assignment.values.reserve(variables.size());
  const std::size_t v = variables.size();
  for (std::size_t j = 0; j < v; ++j) {
    const bool flipped = (mask >> (v - 1 - j)) & 1;
    assignment.values.push_back(flipped ? -1 : 1);
  }
  return assignment;
}

LhvReport max_lhv_bell(const BellGameSpec& spec, std::size_t partitions) {
  const std::vector<LhvVariable> variables = collect_variables(spec.terms);
  std::vector<std::uint64_t> masks;
  std::vector<int> signs;
  masks.reserve(spec.terms.size());
  signs.reserve(spec.terms.size());
  for (const PauliString& term : spec.terms) {
    masks.push_back(term_mask(term, variables));
    signs.push_back(phase_sign(term.phase()));
  }

  const ScanBest best =
      partitioned_scan(variables.size(), partitions, [&](std::uint64_t m) {
        int total = 0;
        for (std::size_t t = 0; t < masks.size(); ++t) {
          total += signs[t] * parity_sign(m & masks[t]);
        }
        return static_cast<double>(total);
      });
  return report_from(best, variables);
}

LhvReport max_lhv_triangle(const TriangleGameSpec& spec,
                           std::size_t partitions) {
  std::vector<PauliString> observables;
  for (const auto& [coin, conditions] : spec.rows) {
    for (const Condition& c : conditions) {
      observables.push_back(c.observable);
    }
  }
  const std::vector<LhvVariable> variables = collect_variables(observables);

  struct MaskedCondition {
    std::uint64_t mask;
    int sign;      // observable phase
    int required;  // winning value
  };
  std::vector<std::vector<MaskedCondition>> rows;
  for (const auto& [coin, conditions] : spec.rows) {
    std::vector<MaskedCondition> row;
    for (const Condition& c : conditions) {
      row.push_back({term_mask(c.observable, variables),
                     phase_sign(c.observable.phase()), c.required_sign});
    }
    rows.push_back(std::move(row));
  }

  const ScanBest best =
      partitioned_scan(variables.size(), partitions, [&](std::uint64_t m) {
        int wins = 0;
        for (const auto& row : rows) {
          const bool won = std::all_of(
              row.begin(), row.end(), [&](const MaskedCondition& c) {
                return c.sign * parity_sign(m & c.mask) == c.required;
              });
          wins += won ? 1 : 0;
        }
        return static_cast<double>(wins) / static_cast<double>(rows.size());
      });
  return report_from(best, variables);
}

}  // namespace qgame
