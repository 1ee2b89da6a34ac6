#include "agequant/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "agequant/errors.hpp"
#include "agequant/optimize.hpp"
#include "agequant/quadrature.hpp"

namespace agequant {
namespace {

constexpr int kCdfPanels = 2048;
constexpr double kStatTol = 1e-12;      // entropy / log2^2 integrals
constexpr double kPanelTol = 1e-13;     // per-panel CDF masses
constexpr double kMinMass = 1e-250;     // below this the truncation is degenerate
constexpr double kInverseCdfTol = 1e-13;

double grid_point(double lo, double hi, int i, int n) {
  return (lo * static_cast<double>(n - i) + hi * static_cast<double>(i)) /
         static_cast<double>(n);
}

std::string format_interval(double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%g,%g]", lo, hi);
  return buf;
}

SourceModel finalize(double lo, double hi, std::function<double(double)> raw,
                     std::string family, double mode_hint) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw parameter_error("source: support endpoints must be finite");
  }
  if (lo > hi) throw parameter_error("source: requires lo < hi");
  if (lo == hi) throw degenerate_source_error("source: empty support interval");

  const double mass = integrate(raw, lo, hi, kStatTol);
  if (!(mass > kMinMass) || !std::isfinite(mass)) {
    throw degenerate_source_error("source: truncated mass is numerically zero");
  }

  SourceModel m;
  m.support_lo = lo;
  m.support_hi = hi;
  m.family = std::move(family);
  m.density = [raw = std::move(raw), mass](double x) { return raw(x) / mass; };

  // Density maximum: golden-section seeded at the analytic mode, cross-checked
  // against the endpoints and a coarse grid.
  const auto& f = m.density;
  const auto neg = [&f](double x) { return -f(x); };
  const double span = hi - lo;
  double best = std::max({f(lo), f(hi), f(std::clamp(mode_hint, lo, hi))});
  best = std::max(best, -golden_section_minimize(neg, lo, hi, span * 1e-10).value);
  for (int i = 0; i <= 64; ++i) best = std::max(best, f(grid_point(lo, hi, i, 64)));
  m.max_density = best;

  m.diff_entropy_bits = integrate(
      [&f](double x) {
        const double v = f(x);
        return v > 0.0 ? -v * std::log2(v) : 0.0;
      },
      lo, hi, kStatTol);
  m.log2sq_integral = integrate(
      [&f](double x) {
        const double v = f(x);
        if (v <= 0.0) return 0.0;
        const double l = std::log2(v);
        return v * l * l;
      },
      lo, hi, kStatTol);

  // CDF table on a uniform grid; renormalized so the last entry is exactly 1.
  m.cdf_x.resize(kCdfPanels + 1);
  m.cdf_mass.resize(kCdfPanels + 1);
  m.cdf_x.front() = lo;
  m.cdf_mass.front() = 0.0;
  double cum = 0.0;
  for (int i = 0; i < kCdfPanels; ++i) {
    const double a = grid_point(lo, hi, i, kCdfPanels);
    const double b = grid_point(lo, hi, i + 1, kCdfPanels);
    cum += integrate(f, a, b, kPanelTol);
    m.cdf_x[i + 1] = b;
    m.cdf_mass[i + 1] = cum;
  }
  const double total = m.cdf_mass.back();
  for (auto& v : m.cdf_mass) v /= total;
  m.cdf_mass.back() = 1.0;
  return m;
}

}  // namespace

SourceModel make_truncated_exponential(double rate, double lo, double hi) {
  if (!(rate > 0.0)) throw parameter_error("make_truncated_exponential: requires rate > 0");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "texp(rate=%g)", rate);
  auto raw = [rate](double x) { return x < 0.0 ? 0.0 : rate * std::exp(-rate * x); };
  return finalize(lo, hi, raw, std::string(buf) + format_interval(lo, hi),
                  std::max(lo, 0.0));
}

SourceModel make_truncated_gaussian(double mean, double stddev, double lo, double hi) {
  if (!(stddev > 0.0)) throw parameter_error("make_truncated_gaussian: requires std > 0");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "tnorm(mean=%g,std=%g)", mean, stddev);
  constexpr double kInvSqrt2Pi = 0.3989422804014327;
  auto raw = [mean, stddev](double x) {
    const double z = (x - mean) / stddev;
    return kInvSqrt2Pi / stddev * std::exp(-0.5 * z * z);
  };
  return finalize(lo, hi, raw, std::string(buf) + format_interval(lo, hi), mean);
}

SourceModel make_uniform_source(double lo, double hi) {
  if (lo > hi) throw parameter_error("make_uniform_source: requires lo < hi");
  if (lo == hi) throw degenerate_source_error("make_uniform_source: empty support interval");
  SourceModel m = finalize(lo, hi, [](double) { return 1.0; },
                           "uniform" + format_interval(lo, hi),
                           0.5 * (lo + hi));
  // Exact closed forms for the fixture.
  const double width = hi - lo;
  m.density = [width](double) { return 1.0 / width; };
  m.max_density = 1.0 / width;
  m.diff_entropy_bits = std::log2(width);
  m.log2sq_integral = std::log2(width) * std::log2(width);
  return m;
}

SourceModel make_custom_source(double lo, double hi,
                               std::function<double(double)> raw_density,
                               const std::string& family, double mode_hint) {
  return finalize(lo, hi, std::move(raw_density),
                  "custom:" + family + format_interval(lo, hi), mode_hint);
}

double inverse_cdf_sample(const SourceModel& model, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw parameter_error("inverse_cdf_sample: requires u in [0,1]");
  }
  if (u <= 0.0) return model.support_lo;
  if (u >= 1.0) return model.support_hi;

  const auto& F = model.cdf_mass;
  const auto& X = model.cdf_x;
  // Largest node index with F[idx] <= u.
  auto it = std::upper_bound(F.begin(), F.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - F.begin()) - 1;
  idx = std::min(idx, F.size() - 2);

  double ax = X[idx], bx = X[idx + 1];
  const double fa = F[idx], fb = F[idx + 1];
  if (fb <= fa) return ax;  // panel with zero mass: CDF flat here

  const double panel_lo = ax;
  const double panel_f0 = fa;
  const auto local_cdf = [&](double x) {
    return panel_f0 + gauss_kronrod_panel(model.density, panel_lo, x);
  };

  double x = ax + (u - fa) / (fb - fa) * (bx - ax);
  for (int it2 = 0; it2 < 100; ++it2) {
    const double r = local_cdf(x) - u;
    if (std::abs(r) <= kInverseCdfTol) return x;
    if (r > 0.0) {
      bx = x;
    } else {
      ax = x;
    }
    const double slope = model.density(x);
    double next = slope > 0.0 ? x - r / slope : 0.5 * (ax + bx);
    if (!(next > ax && next < bx)) next = 0.5 * (ax + bx);
    if (next == x) return x;  // at floating-point resolution
    x = next;
  }
  return x;
}

}  // namespace agequant
