#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qgame/hist.hpp"

namespace qgame {

/// Row-major 4x4 matrix over the two-qubit readout outcomes of one player.
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Readout confusion, one matrix per player (a player holds two adjacent
/// qubits; player i covers qubits 2i+1 and 2i+2). Matrices are column
/// stochastic: entry [read][prepared], columns indexed by the prepared
/// pair with the odd qubit as the high bit.
struct ConfusionSet {
  std::size_t n = 0;
  std::vector<Mat4> players;
};

/// Two-bit pair index of player `player` (0-based) inside an n-bit string.
std::size_t player_pair_index(std::string_view bits, std::size_t player);

/// Estimates per-player confusion matrices from calibration runs keyed by
/// the prepared bitstring. The four standard patterns (all-zeros, the two
/// alternations, all-ones) give every player all four prepared pairs; a
/// pattern set that leaves a column empty fails with
/// Error("calibration_design").
ConfusionSet estimate_confusion(
    const std::map<std::string, Histogram>& by_pattern);
ConfusionSet estimate_confusion(
    const std::map<std::string, QuasiDistribution>& by_pattern);

/// Gauss-Jordan inverse of each player matrix. Fails with
/// Error("not_invertible") on a singular matrix or an infinity-norm
/// condition number above kConditionLimit.
inline constexpr double kConditionLimit = 1e6;
std::vector<Mat4> invert_players(const ConfusionSet& set);

/// Applies the inverse confusion player by player, producing a signed
/// quasi-distribution whose total weight stays that of the input.
QuasiDistribution mitigate(const QuasiDistribution& raw,
                           const ConfusionSet& set);
QuasiDistribution mitigate(const Histogram& raw, const ConfusionSet& set);

}  // namespace qgame
