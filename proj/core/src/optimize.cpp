#include "agequant/optimize.hpp"

#include <cmath>

#include "agequant/errors.hpp"

namespace agequant {

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f,
                                            double lo, double hi, double x_tol) {
  if (!(lo <= hi)) throw parameter_error("golden_section_minimize: requires lo <= hi");
  if (!(x_tol > 0.0)) throw parameter_error("golden_section_minimize: requires x_tol > 0");

  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 400 && (b - a) > x_tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace agequant
