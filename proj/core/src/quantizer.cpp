#include "agequant/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "agequant/errors.hpp"
#include "agequant/quadrature.hpp"

namespace agequant {
namespace {

constexpr double kCellTol = 1e-13;  // per-cell integral tolerance

double grid_point(double lo, double hi, int i, int n) {
  return (lo * static_cast<double>(n - i) + hi * static_cast<double>(i)) /
         static_cast<double>(n);
}

struct CellMoments {
  double p = 0.0;   // mass
  double m1 = 0.0;  // integral of x f
  double m2 = 0.0;  // integral of x^2 f
};

CellMoments cell_moments(const SourceModel& model, double a, double b) {
  const auto& f = model.density;
  CellMoments m;
  m.p = integrate(f, a, b, kCellTol);
  m.m1 = integrate([&f](double x) { return x * f(x); }, a, b, kCellTol);
  m.m2 = integrate([&f](double x) { return x * x * f(x); }, a, b, kCellTol);
  return m;
}

double entropy_bits_of(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Distortion contribution of one cell from its moments (independent of the
// direct (x-c)^2 quadrature used by distortion_of).
double cell_distortion_from_moments(const CellMoments& m, double c) {
  return std::max(0.0, m.m2 - 2.0 * c * m.m1 + c * c * m.p);
}

}  // namespace

std::vector<std::size_t> QuantizerSpec::positive_cells() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) idx.push_back(i);
  }
  return idx;
}

std::vector<double> QuantizerSpec::positive_probs() const {
  std::vector<double> p;
  for (double v : probs) {
    if (v > 0.0) p.push_back(v);
  }
  return p;
}

QuantizerSpec build_uniform(const SourceModel& model, int levels, RepPoints rep_points) {
  if (levels < 1) throw parameter_error("build_uniform: requires levels >= 1");
  const double lo = model.support_lo, hi = model.support_hi;
  const int n = levels;

  QuantizerSpec q;
  q.levels = n;
  q.cell_size = (hi - lo) / n;
  q.endpoints.resize(n + 1);
  q.reps.resize(n);
  q.probs.resize(n);
  for (int i = 0; i <= n; ++i) q.endpoints[i] = grid_point(lo, hi, i, n);

  double distortion = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = q.endpoints[i], b = q.endpoints[i + 1];
    const CellMoments m = cell_moments(model, a, b);
    const double mid = 0.5 * (a + b);
    double c = mid;
    if (rep_points == RepPoints::centroid && m.p > 0.0) {
      c = std::clamp(m.m1 / m.p, a, b);
    }
    q.probs[i] = std::max(m.p, 0.0);
    q.reps[i] = c;
    distortion += cell_distortion_from_moments(m, c);
  }
  q.distortion = distortion;
  q.entropy_bits = entropy_bits_of(q.probs);
  return q;
}

LloydMaxResult build_lloyd_max(const SourceModel& model, int levels, double tol,
                               int max_iters) {
  if (levels < 1) throw parameter_error("build_lloyd_max: requires levels >= 1");
  if (!(tol > 0.0)) throw parameter_error("build_lloyd_max: requires tol > 0");
  const double lo = model.support_lo, hi = model.support_hi;
  const double span = hi - lo;
  const int n = levels;

  std::vector<double> edges(n + 1);
  for (int i = 0; i <= n; ++i) edges[i] = grid_point(lo, hi, i, n);

  LloydMaxResult result;
  std::vector<CellMoments> cells(n);
  std::vector<double> reps(n);
  double prev_distortion = 0.0;
  int repair_budget = 8 * n;

  int iter = 0;
  while (iter < max_iters) {
    bool empty_cell = false;
    for (int i = 0; i < static_cast<int>(edges.size()) - 1; ++i) {
      cells[i] = cell_moments(model, edges[i], edges[i + 1]);
      if (!(cells[i].p > 0.0)) empty_cell = true;
    }

    if (empty_cell && repair_budget > 0) {
      // Drop one boundary of the first empty cell, then split the
      // highest-probability cell at its midpoint to restore the level count.
      --repair_budget;
      ++result.repaired_cells;
      int dead = 0;
      while (cells[dead].p > 0.0) ++dead;
      edges.erase(edges.begin() + (dead == 0 ? 1 : dead));
      int densest = 0;
      double best_p = -1.0;
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double p = integrate(model.density, edges[i], edges[i + 1], kCellTol);
        if (p > best_p) {
          best_p = p;
          densest = static_cast<int>(i);
        }
      }
      edges.insert(edges.begin() + densest + 1,
                   0.5 * (edges[densest] + edges[densest + 1]));
      continue;
    }

    ++iter;
    double distortion = 0.0;
    for (int i = 0; i < n; ++i) {
      double c = 0.5 * (edges[i] + edges[i + 1]);
      if (cells[i].p > 0.0) c = std::clamp(cells[i].m1 / cells[i].p, edges[i], edges[i + 1]);
      reps[i] = c;
      distortion += cell_distortion_from_moments(cells[i], c);
    }
    result.distortion_history.push_back(distortion);
    if (iter >= 2 && std::abs(prev_distortion - distortion) <=
                         tol * std::max(std::abs(prev_distortion), 1e-300)) {
      result.converged = true;
      break;
    }
    prev_distortion = distortion;

    double movement = 0.0;
    for (int i = 1; i < n; ++i) {
      const double b = 0.5 * (reps[i - 1] + reps[i]);
      movement = std::max(movement, std::abs(b - edges[i]));
      edges[i] = b;
    }
    if (movement <= 1e-12 * span) {
      result.converged = true;
      break;
    }
  }
  result.iterations = iter;

  // Duplicate representation points that survived to convergence collapse to
  // a single level.
  for (int i = 0; i + 1 < static_cast<int>(reps.size());) {
    if (std::abs(reps[i + 1] - reps[i]) <= 1e-14 * span) {
      reps.erase(reps.begin() + i + 1);
      edges.erase(edges.begin() + i + 1);
      ++result.merged_cells;
    } else {
      ++i;
    }
  }

  QuantizerSpec q;
  q.levels = static_cast<int>(reps.size());
  q.endpoints = edges;
  q.reps = reps;
  q.probs.resize(reps.size());
  double distortion = 0.0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const CellMoments m = cell_moments(model, edges[i], edges[i + 1]);
    q.probs[i] = std::max(m.p, 0.0);
    distortion += cell_distortion_from_moments(m, reps[i]);
  }
  q.distortion = distortion;
  q.entropy_bits = entropy_bits_of(q.probs);
  result.spec = std::move(q);
  return result;
}

double distortion_of(const SourceModel& model, std::span<const double> endpoints,
                     std::span<const double> reps) {
  if (endpoints.size() != reps.size() + 1 || reps.empty()) {
    throw parameter_error("distortion_of: endpoints must have reps.size()+1 entries");
  }
  for (std::size_t i = 0; i + 1 < endpoints.size(); ++i) {
    if (!(endpoints[i] < endpoints[i + 1])) {
      throw parameter_error("distortion_of: endpoints must be strictly increasing");
    }
  }
  const double slack = 1e-6 * (model.support_hi - model.support_lo);
  if (std::abs(endpoints.front() - model.support_lo) > slack ||
      std::abs(endpoints.back() - model.support_hi) > slack) {
    throw parameter_error("distortion_of: partition must span the support");
  }
  const auto& f = model.density;
  double d = 0.0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const double c = reps[i];
    d += integrate([&f, c](double x) { return (x - c) * (x - c) * f(x); },
                   endpoints[i], endpoints[i + 1], kCellTol);
  }
  return d;
}

}  // namespace agequant
