#pragma once

#include <functional>

namespace agequant {

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over [lo, hi].
///
/// Splits the worst panel until the summed error estimate drops below
/// abs_tol. Deterministic for fixed inputs. Throws integration_error
/// (carrying the residual estimate) if the panel budget is exhausted first,
/// and parameter_error if lo > hi or abs_tol <= 0.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-10);

/// Single non-adaptive K15 panel; also returns the |K15-G7| error estimate.
/// Building block for integrate() and for incremental CDF evaluation.
double gauss_kronrod_panel(const std::function<double(double)>& f, double lo,
                           double hi, double* err_estimate = nullptr);

}  // namespace agequant
