#include "qgame/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

void check_player_layout(std::size_t n) {
  if (n == 0 || n % 2 != 0) {
    fail("dimension", "confusion estimation needs an even qubit count");
  }
}

double inf_norm(const Mat4& m) {
  double worst = 0.0;
  for (const auto& row : m) {
    double sum = 0.0;
    for (double v : row) {
      sum += std::abs(v);
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

// Plain Gauss-Jordan with partial pivoting; 4x4 is small enough that this
// beats pulling in a linear-algebra dependency.
Mat4 invert4(const Mat4& m) {
  std::array<std::array<double, 8>, 4> work{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      work[r][c] = m[r][c];
    }
    work[r][4 + r] = 1.0;
  }
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (std::abs(work[r][col]) > std::abs(work[pivot][col])) {
        pivot = r;
      }
    }
    if (std::abs(work[pivot][col]) < 1e-12) {
      fail("not_invertible", "confusion matrix is singular");
    }
    std::swap(work[col], work[pivot]);
    const double scale = work[col][col];
    for (double& v : work[col]) {
      v /= scale;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || work[r][col] == 0.0) {
        continue;
      }
      const double factor = work[r][col];
      for (std::size_t c = 0; c < 8; ++c) {
        work[r][c] -= factor * work[col][c];
      }
    }
  }
  Mat4 inv{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      inv[r][c] = work[r][4 + c];
    }
  }
  return inv;
}

ConfusionSet estimate_from_distributions(
    const std::map<std::string, QuasiDistribution>& by_pattern) {
  if (by_pattern.empty()) {
    fail("empty_input", "no calibration data");
  }
  const std::size_t n = by_pattern.begin()->first.size();
  check_player_layout(n);
  const std::size_t players = n / 2;

  ConfusionSet set;
  set.n = n;
  set.players.assign(players, Mat4{});
  std::vector<std::array<bool, 4>> seen(players, {false, false, false, false});

  for (const auto& [pattern, dist] : by_pattern) {
    check_bitstring(pattern, n);
    if (dist.n != n) {
      fail("dimension", "calibration distribution qubit count mismatch");
    }
    const double total = dist.total();
    if (total <= 0.0) {
      fail("empty_input", "calibration run for " + pattern + " is empty");
    }
    for (std::size_t p = 0; p < players; ++p) {
      const std::size_t prepared = player_pair_index(pattern, p);
      // Repeating a column overwrites it, so averaging of repeated
      // patterns has to happen upstream; the standard design never does.
      if (seen[p][prepared]) {
        set.players[p][0][prepared] = 0.0;
        set.players[p][1][prepared] = 0.0;
        set.players[p][2][prepared] = 0.0;
        set.players[p][3][prepared] = 0.0;
      }
      seen[p][prepared] = true;
      for (const auto& [bits, w] : dist.weights) {
        check_bitstring(bits, n);
        const std::size_t read = player_pair_index(bits, p);
        set.players[p][read][prepared] += w / total;
      }
    }
  }

  for (std::size_t p = 0; p < players; ++p) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (!seen[p][c]) {
        fail("calibration_design",
             "player " + std::to_string(p + 1) + " never prepared pair " +
                 std::to_string(c));
      }
    }
  }
  return set;
}

}  // namespace

std::size_t player_pair_index(std::string_view bits, std::size_t player) {
  const std::size_t hi = 2 * player;  // odd qubit of the pair, string index
  return 2 * static_cast<std::size_t>(bits[hi] == '1') +
         static_cast<std::size_t>(bits[hi + 1] == '1');
}

ConfusionSet estimate_confusion(
    const std::map<std::string, Histogram>& by_pattern) {
  std::map<std::string, QuasiDistribution> dists;
  for (const auto& [pattern, hist] : by_pattern) {
    dists.emplace(pattern, normalized(hist));
  }
  return estimate_from_distributions(dists);
}

ConfusionSet estimate_confusion(
    const std::map<std::string, QuasiDistribution>& by_pattern) {
  return estimate_from_distributions(by_pattern);
}

std::vector<Mat4> invert_players(const ConfusionSet& set) {
  std::vector<Mat4> inverses;
  inverses.reserve(set.players.size());
  for (const Mat4& m : set.players) {
    Mat4 inv = invert4(m);
    const double cond = inf_norm(m) * inf_norm(inv);
    if (!(cond <= kConditionLimit)) {
      fail("not_invertible",
           "confusion matrix condition number " + std::to_string(cond) +
               " exceeds " + std::to_string(kConditionLimit));
    }
    inverses.push_back(inv);
  }
  return inverses;
}

QuasiDistribution mitigate(const QuasiDistribution& raw,
                           const ConfusionSet& set) {
  if (raw.n != set.n) {
    fail("dimension", "distribution and confusion set disagree on size");
  }
  check_player_layout(set.n);
  if (set.players.size() != set.n / 2) {
    fail("dimension", "confusion set has the wrong number of players");
  }
  const std::vector<Mat4> inverses = invert_players(set);

  QuasiDistribution current = raw;
  for (std::size_t p = 0; p < inverses.size(); ++p) {
    QuasiDistribution next;
    next.n = raw.n;
    for (const auto& [bits, w] : current.weights) {
      check_bitstring(bits, raw.n);
      const std::size_t read = player_pair_index(bits, p);
      for (std::size_t j = 0; j < 4; ++j) {
        const double coeff = inverses[p][j][read];
        if (coeff == 0.0) {
          continue;
        }
        std::string target = bits;
        target[2 * p] = (j & 2) ? '1' : '0';
        target[2 * p + 1] = (j & 1) ? '1' : '0';
        next.weights[target] += coeff * w;
      }
    }
    current = std::move(next);
  }
  return current;
}

QuasiDistribution mitigate(const Histogram& raw, const ConfusionSet& set) {
  return mitigate(normalized(raw), set);
}

}  // namespace qgame
