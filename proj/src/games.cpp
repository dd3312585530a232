#include "qgame/games.hpp"

#include <algorithm>
#include <cmath>

#include "qgame/errors.hpp"
#include "qgame/lhv.hpp"

namespace qgame {

namespace {

Condition make_condition(std::string_view letters, int sign) {
  return Condition{PauliString::parse(letters), sign};
}

const std::vector<std::string>& coin_strings() {
  static const std::vector<std::string> coins = {"000", "001", "010", "011",
                                                 "100", "101", "110", "111"};
  return coins;
}

}  // namespace

TriangleGameSpec triangle_spec() {
  // Winning-condition table. X2X4X6 = +1 applies to every coin; coin 000
  // adds X1X3X5 = +1 and coins 011/101/110 add one four-body condition
  // with a required -1, each a stabilizer product (the sign is generated
  // by Pauli anticommutation).
  TriangleGameSpec spec;
  const Condition bbb = make_condition("IXIXIX", +1);
  for (const std::string& coin : coin_strings()) {
    spec.rows[coin] = {bbb};
  }
  spec.rows["000"].insert(spec.rows["000"].begin(),
                          make_condition("XIXIXI", +1));
  spec.rows["011"].push_back(make_condition("XIYXYI", -1));  // X1 Y3 X4 Y5
  spec.rows["101"].push_back(make_condition("YIXIYX", -1));  // Y1 X3 Y5 X6
  spec.rows["110"].push_back(make_condition("YXYIXI", -1));  // Y1 X2 Y3 X5
  return spec;
}

BellGameSpec build_s_all(std::size_t n) {
  if (n != 6) {
    fail("unsupported_size", "S_all is defined here for n = 6 only");
  }
  BellGameSpec spec;
  spec.label = "s_all";
  for (auto& [mask, product] : enumerate_products(cluster_stabilizers(n))) {
    spec.terms.push_back(std::move(product));
  }
  spec.quantum_value = 64.0;
  spec.classical_bound = 28.0;
  return spec;
}

BellGameSpec build_s_optimal() {
  const std::size_t n = 6;
  BellGameSpec spec;
  spec.label = "s_optimal";
  // Dropped masks: identity, the six generators, and the two triples
  // s1 s3 s5 (mask 010101) and s2 s4 s6 (mask 101010).
  for (auto& [mask, product] : enumerate_products(cluster_stabilizers(n))) {
    bool single = (mask != 0) && ((mask & (mask - 1)) == 0);
    if (mask == 0 || single || mask == 0b010101 || mask == 0b101010) {
      continue;
    }
    spec.terms.push_back(std::move(product));
  }
  spec.quantum_value = 55.0;
  spec.classical_bound = 19.0;
  return spec;
}

bool condition_satisfied(std::string_view outcome,
                         const Condition& condition) {
  const std::size_t n = condition.observable.num_qubits();
  if (outcome.size() != n) {
    fail("dimension", "outcome length " + std::to_string(outcome.size()) +
                          " does not match condition on " + std::to_string(n) +
                          " qubits");
  }
  int parity = 1;
  for (std::size_t q = 0; q < n; ++q) {
    if (condition.observable.letters()[q] != Pauli::I && outcome[q] == '1') {
      parity = -parity;
    }
  }
  return parity == condition.required_sign;
}

double triangle_win_fraction(const QuasiDistribution& dist,
                             const std::vector<Condition>& conditions) {
  double win = 0.0;
  double total = 0.0;
  for (const auto& [outcome, weight] : dist.weights) {
    total += weight;
    bool all_hold = std::all_of(
        conditions.begin(), conditions.end(),
        [&](const Condition& c) { return condition_satisfied(outcome, c); });
    if (all_hold) {
      win += weight;
    }
  }
  if (total == 0.0) {
    fail("empty_input", "distribution has zero total weight");
  }
  return win / total;
}

GameResult score_triangle(const std::map<std::string, QuasiDistribution>& by_coin,
                          const TriangleGameSpec& spec) {
  GameResult result;
  result.game = "triangle";
  result.threshold_classical = TriangleGameSpec::kClassicalValue;
  double sum = 0.0;
  for (const auto& [coin, conditions] : spec.rows) {
    auto it = by_coin.find(coin);
    if (it == by_coin.end()) {
      fail("incomplete_input", "missing histogram for coin " + coin);
    }
    double fraction = triangle_win_fraction(it->second, conditions);
    result.per_circuit["triangle/" + coin] = fraction;
    sum += fraction;
  }
  for (const auto& [coin, dist] : by_coin) {
    if (spec.rows.find(coin) == spec.rows.end()) {
      fail("incomplete_input", "unexpected coin key " + coin);
    }
  }
  result.win_probability = sum / static_cast<double>(spec.rows.size());
  result.win_probability_clamped =
      std::clamp(result.win_probability, 0.0, 1.0);
  return result;
}

double term_expectation(const QuasiDistribution& dist,
                        const PauliString& term) {
  const int sign = phase_sign(term.phase());
  double even = 0.0;
  double odd = 0.0;
  for (const auto& [outcome, weight] : dist.weights) {
    check_bitstring(outcome, term.num_qubits());
    int parity = 1;
    for (std::size_t q = 0; q < term.num_qubits(); ++q) {
      if (term.letters()[q] != Pauli::I && outcome[q] == '1') {
        parity = -parity;
      }
    }
    (parity == 1 ? even : odd) += weight;
  }
  const double total = even + odd;
  if (total == 0.0) {
    fail("empty_input", "distribution has zero total weight");
  }
  return sign * (even - odd) / total;
}

double bell_value(const std::map<std::string, QuasiDistribution>& by_term,
                  const BellGameSpec& spec) {
  double value = 0.0;
  for (const PauliString& term : spec.terms) {
    if (term.is_identity()) {
      value += phase_sign(term.phase());
      continue;
    }
    auto it = by_term.find(term.str());
    if (it == by_term.end()) {
      fail("incomplete_input", "missing histogram for term " + term.str());
    }
    value += term_expectation(it->second, term);
  }
  return value;
}

double win_probability_from_bell(double s, const BellGameSpec& spec) {
  if (spec.quantum_value <= 0.0) {
    fail("config", "Bell spec has non-positive quantum value");
  }
  return (1.0 + s / spec.quantum_value) / 2.0;
}

double classical_threshold(const BellGameSpec& spec) {
  return (1.0 + spec.classical_bound / spec.quantum_value) / 2.0;
}

double eval_classical_strategy(const LhvAssignment& assignment,
                               const TriangleGameSpec& spec) {
  int wins = 0;
  for (const auto& [coin, conditions] : spec.rows) {
    bool all_hold = std::all_of(
        conditions.begin(), conditions.end(), [&](const Condition& c) {
          int value = 1;
          for (std::size_t q : c.observable.support()) {
            value *= assignment.value(q, c.observable.letter(q));
          }
          return value == c.required_sign;
        });
    if (all_hold) {
      ++wins;
    }
  }
  return static_cast<double>(wins) / static_cast<double>(spec.rows.size());
}

}  // namespace qgame
