#pragma once

#include <span>

#include "agequant/coder.hpp"

namespace agequant {

/// Deterministic waiting policy. zero_wait never waits; threshold waits
/// Z(l) = max(0, beta - l) after a service of duration l, so the effective
/// cycle service is max(l, beta). zero_wait is identical to threshold with
/// beta <= ess inf L.
struct SamplingPolicy {
  enum class Kind { zero_wait, threshold };
  Kind kind = Kind::zero_wait;
  double beta = 0.0;

  static SamplingPolicy zero_wait() { return {Kind::zero_wait, 0.0}; }
  static SamplingPolicy threshold(double beta) { return {Kind::threshold, beta}; }

  double waiting(double service_len) const {
    if (kind == Kind::zero_wait) return 0.0;
    return service_len >= beta ? 0.0 : beta - service_len;
  }
};

/// AoI value with its decomposition: aoi = second_moment_term + mean_term,
/// where second_moment_term = E[(L+Z)^2] / (2 E[L+Z]) and mean_term = E[L].
/// lower_bound is (3/2) H of the cell distribution.
struct AoIReport {
  double aoi = 0.0;
  double second_moment_term = 0.0;
  double mean_term = 0.0;
  double lower_bound = 0.0;
  SamplingPolicy policy;
};

/// Evaluates the i.i.d.-service AoI formula exactly as weighted sums over the
/// cells. Throws degenerate_code_error when E[L+Z] = 0.
AoIReport aoi_analytic(std::span<const double> probs, const CodeLengths& code,
                       SamplingPolicy policy);

/// Zero-wait optimality condition: ess inf L >= E[L^2] / (2 E[L]).
struct ZeroWaitCheck {
  bool holds = false;
  double margin = 0.0;  // ess_inf - E[L^2]/(2 E[L])
};
ZeroWaitCheck zero_wait_condition(const CodeLengths& code);

/// High-resolution approximation -log2(delta * M) of ess inf L for a uniform
/// quantizer with Shannon coding; reported as a diagnostic.
double ess_inf_uniform_diagnostic(double delta, double max_density);

/// Minimizes the threshold-family AoI over beta in [0, max l + E[L]] by
/// per-segment golden-section search (the objective is smooth between
/// consecutive distinct lengths). When zero wait is optimal, beta_star = 0
/// and the report equals the zero-wait report exactly.
struct ThresholdOptResult {
  double beta_star = 0.0;
  double search_hi = 0.0;  // upper end of the searched interval
  AoIReport report;
};
ThresholdOptResult optimize_threshold(std::span<const double> probs,
                                      const CodeLengths& code, double tol = 1e-10);

}  // namespace agequant
