#include "agequant/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "agequant/errors.hpp"

namespace agequant {
namespace {

// QUADPACK 15-point Kronrod / 7-point Gauss pair on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
  double lo, hi, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = half * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

constexpr int kMaxPanels = 4096;

}  // namespace

double gauss_kronrod_panel(const std::function<double(double)>& f, double lo,
                           double hi, double* err_estimate) {
  const Panel p = evaluate_panel(f, lo, hi);
  if (err_estimate != nullptr) *err_estimate = p.err;
  return p.value;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
  if (!(lo <= hi)) throw parameter_error("integrate: requires lo <= hi");
  if (!(abs_tol > 0.0)) throw parameter_error("integrate: requires abs_tol > 0");
  if (lo == hi) return 0.0;

  std::priority_queue<Panel> queue;
  queue.push(evaluate_panel(f, lo, hi));
  double total_value = queue.top().value;
  double total_err = queue.top().err;
  int panels = 1;

  while (total_err > abs_tol && panels < kMaxPanels) {
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval at floating-point resolution; cannot refine further.
      queue.push({worst.lo, worst.hi, worst.value, 0.0});
      total_err -= worst.err;
      continue;
    }
    const Panel left = evaluate_panel(f, worst.lo, mid);
    const Panel right = evaluate_panel(f, mid, worst.hi);
    total_value += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  if (total_err > abs_tol) {
    throw integration_error("integrate: panel budget exhausted before reaching abs_tol",
                            total_err);
  }
  return total_value;
}

}  // namespace agequant
