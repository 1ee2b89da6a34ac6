#pragma once

#include <functional>
#include <string>
#include <vector>

namespace agequant {

/// A truncated continuous source density on a bounded interval, renormalized
/// to unit mass, together with the derived quantities the rest of the library
/// needs: the density maximum M, the differential entropy h(X) in bits, the
/// integral of f*log2(f)^2, and a tabulated CDF for inverse sampling.
///
/// Immutable after construction; safe to share across threads.
struct SourceModel {
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<double(double)> density;  // renormalized pdf on [lo, hi]
  double max_density = 0.0;               // max of density over the support
  double diff_entropy_bits = 0.0;         // -integral f log2 f
  double log2sq_integral = 0.0;           // integral f (log2 f)^2
  std::string family;                     // e.g. "texp(rate=1)[0,15]"

  // Tabulated CDF on a uniform grid (cdf_x.front()=lo, cdf_x.back()=hi,
  // cdf_mass.front()=0, cdf_mass.back()=1).
  std::vector<double> cdf_x;
  std::vector<double> cdf_mass;
};

/// exp(rate) pdf restricted to [lo, hi] and renormalized.
SourceModel make_truncated_exponential(double rate, double lo, double hi);

/// N(mean, std^2) pdf restricted to [lo, hi] and renormalized.
SourceModel make_truncated_gaussian(double mean, double stddev, double lo, double hi);

/// Constant density on [lo, hi]; exact closed forms, used as a test fixture.
SourceModel make_uniform_source(double lo, double hi);

/// Arbitrary nonnegative density on [lo, hi]; renormalized numerically.
/// mode_hint seeds the max-density search.
SourceModel make_custom_source(double lo, double hi,
                               std::function<double(double)> raw_density,
                               const std::string& family, double mode_hint);

/// Solves F(x) = u on the support by monotone root-finding on the tabulated
/// CDF (bisection bracket + Newton refinement against the local quadrature).
double inverse_cdf_sample(const SourceModel& model, double u);

}  // namespace agequant
