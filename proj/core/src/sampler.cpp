#include "agequant/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "agequant/errors.hpp"
#include "agequant/optimize.hpp"

namespace agequant {
namespace {

double entropy_bits_of(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void check_alignment(std::span<const double> probs, const CodeLengths& code,
                     const char* who) {
  if (probs.size() != code.lengths.size()) {
    throw parameter_error(std::string(who) + ": probs/code size mismatch");
  }
}

}  // namespace

AoIReport aoi_analytic(std::span<const double> probs, const CodeLengths& code,
                       SamplingPolicy policy) {
  check_alignment(probs, code, "aoi_analytic");
  double ey = 0.0, ey2 = 0.0, el = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double l = code.lengths[i];
    const double y = l + policy.waiting(l);
    ey += probs[i] * y;
    ey2 += probs[i] * y * y;
    el += probs[i] * l;
  }
  if (!(ey > 0.0)) {
    throw degenerate_code_error("aoi_analytic: E[L+Z] = 0, age formula is 0/0");
  }
  AoIReport r;
  r.policy = policy;
  r.second_moment_term = ey2 / (2.0 * ey);
  r.mean_term = el;
  r.aoi = r.second_moment_term + r.mean_term;
  r.lower_bound = 1.5 * entropy_bits_of(probs);
  return r;
}

ZeroWaitCheck zero_wait_condition(const CodeLengths& code) {
  ZeroWaitCheck c;
  if (!(code.mean_len > 0.0)) {
    c.margin = 0.0;  // all-zero lengths: condition is vacuous
    c.holds = true;
    return c;
  }
  c.margin = code.ess_inf - code.second_moment / (2.0 * code.mean_len);
  c.holds = c.margin >= 0.0;
  return c;
}

double ess_inf_uniform_diagnostic(double delta, double max_density) {
  return -std::log2(delta * max_density);
}

ThresholdOptResult optimize_threshold(std::span<const double> probs,
                                      const CodeLengths& code, double tol) {
  check_alignment(probs, code, "optimize_threshold");
  if (!(tol > 0.0)) throw parameter_error("optimize_threshold: requires tol > 0");

  const auto aoi_at = [&](double beta) {
    double ey = 0.0, ey2 = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double y = std::max(code.lengths[i], beta);
      ey += probs[i] * y;
      ey2 += probs[i] * y * y;
    }
    if (!(ey > 0.0)) throw degenerate_code_error("optimize_threshold: E[L+Z] = 0");
    return ey2 / (2.0 * ey) + code.mean_len;
  };

  const double hi =
      *std::max_element(code.lengths.begin(), code.lengths.end()) + code.mean_len;

  // The objective is smooth between consecutive distinct lengths; search each
  // segment and keep the global best.
  std::vector<double> knots(code.lengths.begin(), code.lengths.end());
  knots.push_back(0.0);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
              knots.end());

  std::vector<std::pair<double, double>> candidates;  // (beta, value)
  for (double k : knots) {
    if (k >= 0.0 && k <= hi) candidates.emplace_back(k, aoi_at(k));
  }
  const double x_tol = std::max(tol, 1e-13) * std::max(1.0, hi);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = std::max(knots[i], 0.0), b = std::min(knots[i + 1], hi);
    if (b - a <= x_tol) continue;
    const GoldenSectionResult g = golden_section_minimize(aoi_at, a, b, x_tol);
    candidates.emplace_back(g.x, g.value);
  }

  double best_value = candidates.front().second;
  for (const auto& [beta, value] : candidates) best_value = std::min(best_value, value);
  // Among near-ties prefer the smallest threshold, so zero wait is recovered
  // exactly whenever it is optimal.
  const double slack = 1e-12 * std::max(1.0, std::abs(best_value));
  double beta_star = hi;
  for (const auto& [beta, value] : candidates) {
    if (value <= best_value + slack) beta_star = std::min(beta_star, beta);
  }

  ThresholdOptResult result;
  result.beta_star = beta_star;
  result.search_hi = hi;
  result.report = aoi_analytic(probs, code, SamplingPolicy::threshold(beta_star));
  return result;
}

}  // namespace agequant
