#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bwslex {

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// NaN when the inputs differ in length, have fewer than two elements, or
// either side has zero variance. Result is clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);
double sample_stddev(std::span<const double> values);

// Standard normal quantile for the given confidence: one-sided uses
// Phi^-1(confidence), two-sided uses Phi^-1(1 - (1 - confidence) / 2).
double z_for_confidence(double confidence, bool two_sided);

// Lower limit of the Wilson score interval for k successes in n trials.
// Returns 0 when n == 0.
double wilson_lower_bound(std::uint64_t successes, std::uint64_t trials, double z);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

// Ordinary least squares of y on x. Throws DataError if fewer than two points
// or all x are equal.
LineFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace bwslex
