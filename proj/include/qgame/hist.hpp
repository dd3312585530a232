#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace qgame {

// Raw measurement counts. Keys are n-bit strings over {0,1} with qubit 1 as
// the leftmost character (the one global bit-ordering convention).
struct Histogram {
  std::size_t n = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  // Checks key lengths/alphabet and that counts sum to shots.
  void validate() const;
};

// Signed outcome weights summing to ~1. Covers both true distributions
// (Born probabilities, normalized counts) and the signed quasi-probabilities
// produced by linear error mitigation.
struct QuasiDistribution {
  std::size_t n = 0;
  std::map<std::string, double> weights;

  double total() const;
};

QuasiDistribution normalized(const Histogram& h);

void check_bitstring(std::string_view key, std::size_t n);

}  // namespace qgame
