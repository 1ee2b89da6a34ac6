#pragma once

#include <span>
#include <vector>

namespace agequant {

/// A prefix-free codeword length assignment for the cells of positive
/// probability, plus its Kraft sum and first two moments under the cell
/// distribution. Lengths are real-valued unless integer_valued is set.
struct CodeLengths {
  std::vector<double> lengths;
  bool integer_valued = false;
  double kraft_sum = 0.0;      // sum of 2^-l_i
  double mean_len = 0.0;       // E[L]
  double second_moment = 0.0;  // E[L^2]
  double ess_inf = 0.0;        // min length over cells with p_i > 0
};

struct CodeMoments {
  double mean_len = 0.0;
  double second_moment = 0.0;
  double ess_inf = 0.0;
};

/// Exact weighted moments of a length assignment; ess_inf skips zero-probability
/// slots. Throws parameter_error on a size mismatch.
CodeMoments code_moments(std::span<const double> probs, std::span<const double> lengths);

/// Real-valued Shannon code, l_i = -log2 p_i. Requires every p_i > 0.
CodeLengths shannon_real(std::span<const double> probs);

/// Integer-valued Shannon code, l_i = ceil(-log2 p_i).
CodeLengths shannon_integer(std::span<const double> probs);

/// Constant-length code: log2(N) for all cells, or ceil(log2 N) when integer.
CodeLengths constant_length(int levels, bool integer_valued);

/// Zero-wait AoI objective J(L) = E[L^2] / (2 E[L]) + E[L] of a length
/// assignment under probs; J(empty/all-zero) is defined as 0.
double aoi_code_objective(std::span<const double> probs, std::span<const double> lengths);

/// Minimizes J(L) subject to the Kraft inequality and l_i >= 0.
///
/// The lengths are reparametrized as l_i = -log2 q_i with q on the probability
/// simplex, which keeps the Kraft sum tight; since J(cL) = c J(L), any Kraft
/// slack could be removed by shrinking all lengths, so nothing is lost.
/// Minimization is multiplicative-update (exponentiated-gradient) descent with
/// backtracking, run from the Shannon point plus deterministic restarts, until
/// the relative objective change drops below tol.
CodeLengths aoi_optimal_real(std::span<const double> probs, double tol = 1e-10);

/// Ceiling of the real-valued AoI-optimal lengths (the Kraft sum only shrinks).
CodeLengths aoi_optimal_integer(std::span<const double> probs, double tol = 1e-10);

/// Brute-force reference for aoi_optimal_real on n <= 3 cells: grid search
/// over Kraft-tight length vectors, coarse-to-fine down to `step` resolution,
/// ties broken toward the lexicographically smallest vector. Independent of
/// the descent solver; used for cross-checks.
struct GridReference {
  std::vector<double> lengths;
  double objective = 0.0;
};
GridReference kraft_grid_reference(std::span<const double> probs, double step = 1e-3);

}  // namespace agequant
