#include "qgame/hist.hpp"

#include "qgame/errors.hpp"

namespace qgame {

void check_bitstring(std::string_view key, std::size_t n) {
  if (key.size() != n) {
    fail("dimension", "outcome '" + std::string(key) + "' has length " +
                          std::to_string(key.size()) + ", expected " +
                          std::to_string(n));
  }
  for (char c : key) {
    if (c != '0' && c != '1') {
      fail("parse", "outcome '" + std::string(key) + "' is not a bit string");
    }
  }
}

void Histogram::validate() const {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : counts) {
    check_bitstring(key, n);
    sum += count;
  }
  if (sum != shots) {
    fail("parse", "histogram counts sum to " + std::to_string(sum) +
                      " but shots = " + std::to_string(shots));
  }
}

double QuasiDistribution::total() const {
  double sum = 0.0;
  for (const auto& [key, w] : weights) {
    sum += w;
  }
  return sum;
}

QuasiDistribution normalized(const Histogram& h) {
  if (h.shots == 0) {
    fail("empty_input", "histogram has zero shots");
  }
  QuasiDistribution d;
  d.n = h.n;
  const double inv = 1.0 / static_cast<double>(h.shots);
  for (const auto& [key, count] : h.counts) {
    check_bitstring(key, h.n);
    d.weights[key] = static_cast<double>(count) * inv;
  }
  return d;
}

}  // namespace qgame
