#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/hist.hpp"
#include "qgame/pauli.hpp"

namespace qgame {

struct LhvAssignment;  // lhv.hpp

// One winning condition: the measured parity over the observable's support
// must equal required_sign. The observable carries phase +1; the sign lives
// separately so a condition table reads as (observable, expected sign) rows.
struct Condition {
  PauliString observable;
  int required_sign = 1;
};

// The 3-player, 6-qubit triangle game. rows maps each coin string
// ("000".."111") to the conditions that must all hold for that coin.
struct TriangleGameSpec {
  std::map<std::string, std::vector<Condition>> rows;

  static constexpr double kQuantumValue = 1.0;
  static constexpr double kClassicalValue = 0.875;  // 7/8
};

TriangleGameSpec triangle_spec();

// A Bell operator: a sum of Pauli-string terms (sign folded into the phase),
// its quantum value on the cluster state, and its LHV bound.
struct BellGameSpec {
  std::string label;
  std::vector<PauliString> terms;  // identity terms allowed, scored as +1
  double quantum_value = 0.0;
  double classical_bound = 0.0;
};

// Sum of all 64 stabilizer products: Q = 64, LHV bound 28.
BellGameSpec build_s_all(std::size_t n = 6);

// S_all minus the identity, the six s_i, and the two odd/even triples
// s_1 s_3 s_5 and s_2 s_4 s_6: 55 terms, Q = 55, LHV bound 19.
BellGameSpec build_s_optimal();

// Parity test: product of (-1)^bit over the condition's support equals the
// required sign. 0 -> +1, 1 -> -1.
bool condition_satisfied(std::string_view outcome, const Condition& condition);

struct GameResult {
  std::string game;
  double win_probability = 0.0;
  double win_probability_clamped = 0.0;
  double threshold_classical = 0.0;
  std::map<std::string, double> per_circuit;
  double std_error = 0.0;
  bool mitigated = false;
  std::size_t repetitions = 1;
};

// Weight of outcomes satisfying every condition, normalized by the total
// weight. Quasi-distributions may take this outside [0, 1].
double triangle_win_fraction(const QuasiDistribution& dist,
                             const std::vector<Condition>& conditions);

// Scores one realization: 8 distributions keyed by coin string. The win
// probability is the unweighted mean over the 8 coins.
GameResult score_triangle(const std::map<std::string, QuasiDistribution>& by_coin,
                          const TriangleGameSpec& spec);

// Expectation of one term estimated from a distribution: phase times the
// mean of (-1)^parity over the term's support.
double term_expectation(const QuasiDistribution& dist, const PauliString& term);

// Sum of term expectations; identity terms contribute a constant +1 without
// a histogram. Keys are term text forms (PauliString::str()).
double bell_value(const std::map<std::string, QuasiDistribution>& by_term,
                  const BellGameSpec& spec);

// The Bell-to-game mapping p = (1 + S/Q) / 2.
double win_probability_from_bell(double s, const BellGameSpec& spec);

// Classical winning threshold (1 + C/Q) / 2 of the associated game.
double classical_threshold(const BellGameSpec& spec);

// Win probability of a deterministic strategy: the fraction of the 8 coin
// rows whose conditions all hold under the assignment.
double eval_classical_strategy(const LhvAssignment& assignment,
                               const TriangleGameSpec& spec);

}  // namespace qgame
