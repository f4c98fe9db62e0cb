#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace planarmap {

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
};

/// Pearson goodness of fit of `observed` counts against probabilities
/// `expected` (normalised internally).
ChiSquare chi_square(std::span<const std::uint64_t> observed,
                     std::span<const double> expected);

/// Uniform null over observed.size() classes.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> observed);

double normal_cdf(double x);

/// Kolmogorov distance between integer data and N(mean, sd^2), comparing
/// the empirical CDF at each integer k with the normal CDF at k + 1/2.
double ks_normal_discrete(std::span<const std::int64_t> values, double mean, double sd);

struct SampleMoments {
  double mean = 0;
  double variance = 0;  // unbiased
  double skewness = 0;
  double excess_kurtosis = 0;
};

SampleMoments sample_moments(std::span<const double> values);

}  // namespace planarmap
