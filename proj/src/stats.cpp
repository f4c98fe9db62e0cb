#include "planarmap/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace planarmap {

ChiSquare chi_square(std::span<const std::uint64_t> observed,
                     std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square needs matching tables of >= 2 classes");
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  const double norm = std::accumulate(expected.begin(), expected.end(), 0.0);
  if (total <= 0 || norm <= 0) throw std::invalid_argument("empty chi-square table");
  ChiSquare out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected[i] / norm;
    if (e <= 0) throw std::invalid_argument("expected count must be positive");
    const double diff = static_cast<double>(observed[i]) - e;
    out.statistic += diff * diff / e;
  }
  out.dof = observed.size() - 1;
  out.p_value = boost::math::gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0);
  return out;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> observed) {
  const std::vector<double> flat(observed.size(), 1.0);
  return chi_square(observed, flat);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_normal_discrete(std::span<const std::int64_t> values, double mean, double sd) {
  if (values.empty()) throw std::invalid_argument("no data");
  if (!(sd > 0)) throw std::invalid_argument("sd must be positive");
  std::vector<std::int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  auto ref = [&](std::int64_t k) { return normal_cdf((static_cast<double>(k) + 0.5 - mean) / sd); };
  // Both CDFs are step functions on the integers; below the sample minimum
  // the gap is largest at min - 1, above the maximum at max.
  double best = ref(v.front() - 1);
  std::size_t i = 0;
  for (std::int64_t k = v.front(); k <= v.back(); ++k) {
    while (i < v.size() && v[i] <= k) ++i;
    best = std::max(best, std::abs(static_cast<double>(i) / n - ref(k)));
  }
  return best;
}

SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  const std::size_t n = values.size();
  if (n == 0) return m;
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : values) {
    const double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double nn = static_cast<double>(n);
  m2 /= nn;
  m3 /= nn;
  m4 /= nn;
  m.variance = n > 1 ? m2 * nn / (nn - 1) : 0.0;
  if (m2 > 0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

}  // namespace planarmap
