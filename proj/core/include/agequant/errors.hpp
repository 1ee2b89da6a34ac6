#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace agequant {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad interval, unsorted partition, non-probability vector, ...
class parameter_error : public error {
 public:
  using error::error;
};

/// Truncated density carries (numerically) no mass. A zero-width interval is
/// reported here rather than as a plain parameter error.
class degenerate_source_error : public parameter_error {
 public:
  using parameter_error::parameter_error;
};

/// E[L + Z] = 0, so the age formula is 0/0.
class degenerate_code_error : public error {
 public:
  using error::error;
};

/// Adaptive quadrature ran out of panels; carries the residual error estimate.
class integration_error : public error {
 public:
  integration_error(const std::string& what, double residual)
      : error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Code-length solver exhausted its iteration budget; carries the best iterate.
class solver_error : public error {
 public:
  solver_error(const std::string& what, std::vector<double> best_lengths,
               double best_objective, double residual)
      : error(what),
        best_lengths_(std::move(best_lengths)),
        best_objective_(best_objective),
        residual_(residual) {}
  const std::vector<double>& best_lengths() const noexcept { return best_lengths_; }
  double best_objective() const noexcept { return best_objective_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> best_lengths_;
  double best_objective_;
  double residual_;
};

}  // namespace agequant
