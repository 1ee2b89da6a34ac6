#include "agequant/coder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agequant/errors.hpp"

namespace agequant {
namespace {

constexpr double kLn2 = 0.6931471805599453;

void validate_probability_vector(std::span<const double> probs, const char* who) {
  if (probs.empty()) throw parameter_error(std::string(who) + ": empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw parameter_error(std::string(who) + ": probabilities must be positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw parameter_error(std::string(who) + ": probabilities must sum to 1");
  }
}

CodeLengths assemble(std::span<const double> probs, std::vector<double> lengths,
                     bool integer_valued) {
  CodeLengths c;
  c.integer_valued = integer_valued;
  double kraft = 0.0;
  for (double l : lengths) kraft += std::exp2(-l);
  c.kraft_sum = kraft;
  const CodeMoments m = code_moments(probs, lengths);
  c.mean_len = m.mean_len;
  c.second_moment = m.second_moment;
  c.ess_inf = m.ess_inf;
  c.lengths = std::move(lengths);
  return c;
}

double objective_from_moments(double mean, double second) {
  if (!(mean > 0.0)) return 0.0;  // all-zero lengths: degenerate N=1 convention
  return second / (2.0 * mean) + mean;
}

struct EgOutcome {
  std::vector<double> lengths;
  double objective = std::numeric_limits<double>::infinity();
  bool met_tolerance = false;
  double last_rel_change = 0.0;
};

EgOutcome eg_descend(std::span<const double> p, std::vector<double> q, double tol,
                     int budget) {
  const std::size_t n = p.size();
  double qsum = 0.0;
  for (auto& v : q) {
    v = std::max(v, 1e-300);
    qsum += v;
  }
  for (auto& v : q) v /= qsum;

  std::vector<double> lengths(n), grad(n), q_next(n), l_next(n);
  for (std::size_t i = 0; i < n; ++i) lengths[i] = -std::log2(q[i]);

  auto objective = [&p](const std::vector<double>& l) {
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      e1 += p[i] * l[i];
      e2 += p[i] * l[i] * l[i];
    }
    return objective_from_moments(e1, e2);
  };

  double J = objective(lengths);
  double eta = 1.0;
  EgOutcome out;
  for (int it = 0; it < budget; ++it) {
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e1 += p[i] * lengths[i];
      e2 += p[i] * lengths[i] * lengths[i];
    }
    double gmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = (p[i] / (q[i] * kLn2)) *
                ((e2 - 2.0 * lengths[i] * e1) / (2.0 * e1 * e1) - 1.0);
      gmax = std::max(gmax, std::abs(grad[i]));
    }

    double step = std::min(eta, 1.0 / (1e-30 + gmax));
    double J_next = J;
    bool improved = false;
    for (int bt = 0; bt < 70; ++bt) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = std::clamp(-step * grad[i], -50.0, 50.0);
        q_next[i] = q[i] * std::exp(z);
        sum += q_next[i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        q_next[i] = std::max(q_next[i] / sum, 1e-300);
        l_next[i] = -std::log2(q_next[i]);
      }
      J_next = objective(l_next);
      if (J_next < J) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      out.met_tolerance = true;  // stationary: no descent direction left
      break;
    }
    eta = step * 2.0;
    out.last_rel_change = (J - J_next) / std::max(1.0, std::abs(J));
    q.swap(q_next);
    lengths.swap(l_next);
    J = J_next;
    if (out.last_rel_change < tol) {
      out.met_tolerance = true;
      break;
    }
  }
  out.lengths = lengths;
  out.objective = J;
  return out;
}

bool lexicographically_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

CodeMoments code_moments(std::span<const double> probs, std::span<const double> lengths) {
  if (probs.size() != lengths.size()) {
    throw parameter_error("code_moments: probs/lengths size mismatch");
  }
  CodeMoments m;
  double ess = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    m.mean_len += probs[i] * lengths[i];
    m.second_moment += probs[i] * lengths[i] * lengths[i];
    if (probs[i] > 0.0) ess = std::min(ess, lengths[i]);
  }
  m.ess_inf = std::isfinite(ess) ? ess : 0.0;
  return m;
}

CodeLengths shannon_real(std::span<const double> probs) {
  validate_probability_vector(probs, "shannon_real");
  std::vector<double> lengths(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) lengths[i] = -std::log2(probs[i]);
  return assemble(probs, std::move(lengths), false);
}

CodeLengths shannon_integer(std::span<const double> probs) {
  validate_probability_vector(probs, "shannon_integer");
  std::vector<double> lengths(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    lengths[i] = std::ceil(-std::log2(probs[i]) - 1e-12);
  }
  return assemble(probs, std::move(lengths), true);
}

CodeLengths constant_length(int levels, bool integer_valued) {
  if (levels < 1) throw parameter_error("constant_length: requires levels >= 1");
  double len = std::log2(static_cast<double>(levels));
  if (integer_valued) len = std::ceil(len - 1e-12);
  CodeLengths c;
  c.integer_valued = integer_valued;
  c.lengths.assign(static_cast<std::size_t>(levels), len);
  c.kraft_sum = static_cast<double>(levels) * std::exp2(-len);
  c.mean_len = len;
  c.second_moment = len * len;
  c.ess_inf = len;
  return c;
}

double aoi_code_objective(std::span<const double> probs, std::span<const double> lengths) {
  const CodeMoments m = code_moments(probs, lengths);
  return objective_from_moments(m.mean_len, m.second_moment);
}

CodeLengths aoi_optimal_real(std::span<const double> probs, double tol) {
  validate_probability_vector(probs, "aoi_optimal_real");
  if (!(tol > 0.0)) throw parameter_error("aoi_optimal_real: requires tol > 0");
  const std::size_t n = probs.size();
  if (n == 1) return assemble(probs, {0.0}, false);

  // Shannon point plus deterministic perturbations of it (powers + uniform).
  std::vector<std::vector<double>> starts;
  starts.emplace_back(probs.begin(), probs.end());
  for (double gamma : {0.5, 0.75, 0.9, 1.1, 1.25, 1.5, 2.0}) {
    std::vector<double> q(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = std::pow(probs[i], gamma);
      sum += q[i];
    }
    for (auto& v : q) v /= sum;
    starts.push_back(std::move(q));
  }
  starts.emplace_back(n, 1.0 / static_cast<double>(n));

  constexpr int kBudget = 100000;
  EgOutcome best;
  bool any_met = false;
  for (auto& q0 : starts) {
    EgOutcome out = eg_descend(probs, std::move(q0), tol, kBudget);
    any_met = any_met || out.met_tolerance;
    if (out.objective < best.objective) best = std::move(out);
  }
  if (!any_met) {
    throw solver_error("aoi_optimal_real: iteration budget exhausted", best.lengths,
                       best.objective, best.last_rel_change);
  }
  return assemble(probs, std::move(best.lengths), false);
}

CodeLengths aoi_optimal_integer(std::span<const double> probs, double tol) {
  CodeLengths real = aoi_optimal_real(probs, tol);
  std::vector<double> lengths(real.lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    // Snap tolerance absorbs solver noise around exactly-integer optima.
    lengths[i] = std::ceil(real.lengths[i] - 1e-9);
  }
  return assemble(probs, std::move(lengths), true);
}

GridReference kraft_grid_reference(std::span<const double> probs, double step) {
  validate_probability_vector(probs, "kraft_grid_reference");
  if (!(step > 0.0)) throw parameter_error("kraft_grid_reference: requires step > 0");
  const std::size_t n = probs.size();
  if (n > 3) throw parameter_error("kraft_grid_reference: supports n <= 3 only");

  GridReference best;
  if (n == 1) {
    best.lengths = {0.0};
    best.objective = 0.0;
    return best;
  }

  const auto consider = [&](std::vector<double> l, double J) {
    if (J < best.objective - 1e-15 ||
        (std::abs(J - best.objective) <= 1e-15 &&
         (best.lengths.empty() || lexicographically_less(l, best.lengths)))) {
      best.objective = J;
      best.lengths = std::move(l);
    }
  };
  best.objective = std::numeric_limits<double>::infinity();

  if (n == 2) {
    // 1-D exhaustive scan; l2 from Kraft tightness.
    for (double l1 = step; l1 <= 30.0; l1 += step) {
      const double rem = 1.0 - std::exp2(-l1);
      if (rem <= 0.0) continue;
      const double l2 = -std::log2(rem);
      std::vector<double> l = {l1, l2};
      consider(std::move(l), aoi_code_objective(probs, std::vector<double>{l1, l2}));
    }
    return best;
  }

  // n == 3: coarse grid over (l1, l2), then refine the best basins.
  struct Cand {
    double J, l1, l2;
  };
  const double coarse = std::max(step, 0.05);
  std::vector<Cand> top;
  const auto eval3 = [&probs](double l1, double l2, double* l3) {
    const double rem = 1.0 - std::exp2(-l1) - std::exp2(-l2);
    if (rem <= 1e-12) return std::numeric_limits<double>::infinity();
    *l3 = -std::log2(rem);
    const double l[3] = {l1, l2, *l3};
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      e1 += probs[i] * l[i];
      e2 += probs[i] * l[i] * l[i];
    }
    return e2 / (2.0 * e1) + e1;
  };
  for (double l1 = coarse; l1 <= 25.0; l1 += coarse) {
    for (double l2 = coarse; l2 <= 25.0; l2 += coarse) {
      double l3 = 0.0;
      const double J = eval3(l1, l2, &l3);
      if (!std::isfinite(J)) continue;
      if (top.size() < 24) {
        top.push_back({J, l1, l2});
        std::push_heap(top.begin(), top.end(),
                       [](const Cand& a, const Cand& b) { return a.J < b.J; });
      } else if (J < top.front().J) {
        std::pop_heap(top.begin(), top.end(),
                      [](const Cand& a, const Cand& b) { return a.J < b.J; });
        top.back() = {J, l1, l2};
        std::push_heap(top.begin(), top.end(),
                       [](const Cand& a, const Cand& b) { return a.J < b.J; });
      }
    }
  }
  for (const Cand& seed : top) {
    double cur = coarse;
    double c1 = seed.l1, c2 = seed.l2;
    while (cur > step) {
      const double fine = std::max(step, cur / 10.0);
      double b1 = c1, b2 = c2;
      double bJ = std::numeric_limits<double>::infinity();
      for (double l1 = std::max(fine, c1 - 1.2 * cur); l1 <= c1 + 1.2 * cur; l1 += fine) {
        for (double l2 = std::max(fine, c2 - 1.2 * cur); l2 <= c2 + 1.2 * cur; l2 += fine) {
          double l3 = 0.0;
          const double J = eval3(l1, l2, &l3);
          if (J < bJ) {
            bJ = J;
            b1 = l1;
            b2 = l2;
          }
        }
      }
      c1 = b1;
      c2 = b2;
      cur = fine;
    }
    double l3 = 0.0;
    const double J = eval3(c1, c2, &l3);
    if (std::isfinite(J)) consider({c1, c2, l3}, J);
  }
  return best;
}

}  // namespace agequant
