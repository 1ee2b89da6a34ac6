#pragma once

#include <functional>

namespace agequant {

struct GoldenSectionResult {
  double x;
  double value;
};

/// Deterministic golden-section minimization of f over [lo, hi].
/// Converges to an interval of width x_tol (needs unimodal f for a global
/// guarantee; on monotone f it converges to the better endpoint).
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f,
                                            double lo, double hi, double x_tol);

}  // namespace agequant
