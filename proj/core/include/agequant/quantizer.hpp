#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "agequant/source_model.hpp"

namespace agequant {

enum class RepPoints { centroid, midpoint };

/// Scalar quantizer: cell partition, representation points, cell
/// probabilities, MSE distortion and output entropy.
struct QuantizerSpec {
  std::vector<double> endpoints;  // N+1 strictly increasing, spans the support
  std::vector<double> reps;       // N, reps[i] in [endpoints[i], endpoints[i+1]]
  std::vector<double> probs;      // N, sums to 1
  std::optional<double> cell_size;  // uniform quantizers only
  double distortion = 0.0;
  double entropy_bits = 0.0;
  int levels = 0;

  /// Indices of cells with positive probability, in order.
  std::vector<std::size_t> positive_cells() const;
  /// Probabilities of the positive cells (a probability vector).
  std::vector<double> positive_probs() const;
};

/// Uniform quantizer with N equal cells over the support. Representation
/// points are per-cell conditional means by default; midpoints on request.
/// Cells with zero probability keep their slot with the rep at the midpoint.
QuantizerSpec build_uniform(const SourceModel& model, int levels,
                            RepPoints rep_points = RepPoints::centroid);

struct LloydMaxResult {
  QuantizerSpec spec;
  int iterations = 0;
  bool converged = false;  // false: max_iters exhausted (warning, not fatal)
  std::vector<double> distortion_history;  // nonincreasing, one entry per iteration
  int merged_cells = 0;    // duplicate levels merged at convergence
  int repaired_cells = 0;  // empty cells repaired by splitting the densest cell
};

/// Lloyd-Max quantizer: alternates the centroid condition and the
/// nearest-neighbor boundary condition starting from the uniform partition,
/// until the relative distortion change drops below tol (or the boundaries
/// stop moving) or max_iters is reached.
LloydMaxResult build_lloyd_max(const SourceModel& model, int levels,
                               double tol = 1e-12, int max_iters = 10000);

/// MSE distortion of an arbitrary partition/rep assignment: the summed
/// per-cell integral of (x - c_i)^2 f(x). Endpoints must be sorted and span
/// the support.
double distortion_of(const SourceModel& model, std::span<const double> endpoints,
                     std::span<const double> reps);

}  // namespace agequant
