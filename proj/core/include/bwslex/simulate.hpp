#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bwslex/responses.hpp"
#include "bwslex/tuples.hpp"

namespace bwslex {

struct SimConfig {
  std::map<std::string, double, std::less<>> latent;
  std::size_t n_annotators = 10;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

// Thurstonian annotators: each (annotator, tuple, item) perceives
// latent + N(0, sigma^2), with the deviate drawn from a counter stream keyed
// by (seed, annotator, tuple position, item position). Best is the first item
// with the maximum perceived value, worst the first with the minimum.
// Responses are ordered tuple-major, annotator-minor, with increasing
// synthetic timestamps. Throws DataError if an item has no latent score.
std::vector<Response> simulate(const std::vector<Tuple4>& tuples, const SimConfig& config);

std::string simulated_annotator_id(std::size_t index);

}  // namespace bwslex
