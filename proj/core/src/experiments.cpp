#include "agequant/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "agequant/coder.hpp"
#include "agequant/errors.hpp"
#include "agequant/sampler.hpp"

namespace agequant {

const char* to_string(QuantKind k) {
  switch (k) {
    case QuantKind::uniform: return "uniform";
    case QuantKind::lloyd_max: return "lloyd_max";
  }
  return "?";
}

const char* to_string(CodeKind k) {
  switch (k) {
    case CodeKind::shannon_real: return "shannon_real";
    case CodeKind::shannon_int: return "shannon_int";
    case CodeKind::aoi_opt_real: return "aoi_opt_real";
    case CodeKind::aoi_opt_int: return "aoi_opt_int";
    case CodeKind::const_real: return "const_real";
    case CodeKind::const_int: return "const_int";
  }
  return "?";
}

std::optional<QuantKind> quant_kind_from_string(const std::string& s) {
  if (s == "uniform") return QuantKind::uniform;
  if (s == "lloyd_max") return QuantKind::lloyd_max;
  return std::nullopt;
}

std::optional<CodeKind> code_kind_from_string(const std::string& s) {
  for (CodeKind k : {CodeKind::shannon_real, CodeKind::shannon_int, CodeKind::aoi_opt_real,
                     CodeKind::aoi_opt_int, CodeKind::const_real, CodeKind::const_int}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_integer_code(CodeKind k) {
  return k == CodeKind::shannon_int || k == CodeKind::aoi_opt_int ||
         k == CodeKind::const_int;
}

CodeKind real_counterpart(CodeKind k) {
  switch (k) {
    case CodeKind::shannon_int: return CodeKind::shannon_real;
    case CodeKind::aoi_opt_int: return CodeKind::aoi_opt_real;
    case CodeKind::const_int: return CodeKind::const_real;
    default: return k;
  }
}

namespace {

bool admissible(QuantKind q, CodeKind c, bool pair_all) {
  if (pair_all) return true;
  const bool is_const = c == CodeKind::const_real || c == CodeKind::const_int;
  return (q == QuantKind::lloyd_max) == is_const;
}

CodeLengths build_code(CodeKind kind, const std::vector<double>& probs, int levels,
                       double solver_tol) {
  switch (kind) {
    case CodeKind::shannon_real: return shannon_real(probs);
    case CodeKind::shannon_int: return shannon_integer(probs);
    case CodeKind::aoi_opt_real: return aoi_optimal_real(probs, solver_tol);
    case CodeKind::aoi_opt_int: return aoi_optimal_integer(probs, solver_tol);
    case CodeKind::const_real:
    case CodeKind::const_int: {
      CodeLengths c = constant_length(levels, kind == CodeKind::const_int);
      // Align to the positive cells; moments are unchanged for equal lengths.
      c.lengths.assign(probs.size(), c.mean_len);
      c.kraft_sum = static_cast<double>(probs.size()) * std::exp2(-c.mean_len);
      return c;
    }
  }
  throw parameter_error("build_code: unknown code kind");
}

}  // namespace

std::vector<SweepRow> run_sweep(const SourceModel& model,
                                const std::vector<int>& levels_list,
                                const std::vector<CodeKind>& codes,
                                const std::vector<QuantKind>& quantizers,
                                const SweepOptions& opts) {
  if (levels_list.empty()) throw parameter_error("run_sweep: empty levels list");
  for (int n : levels_list) {
    if (n < 2) throw parameter_error("run_sweep: every levels entry must be >= 2");
  }
  if (codes.empty()) throw parameter_error("run_sweep: empty code list");
  if (quantizers.empty()) throw parameter_error("run_sweep: empty quantizer list");

  std::vector<SweepRow> rows;
  for (QuantKind qk : quantizers) {
    for (int levels : levels_list) {
      QuantizerSpec quant;
      try {
        quant = qk == QuantKind::uniform
                    ? build_uniform(model, levels, opts.rep_points)
                    : build_lloyd_max(model, levels, opts.lloyd_tol, opts.lloyd_max_iters)
                          .spec;
      } catch (const error& e) {
        throw error("run_sweep: " + model.family + " " + to_string(qk) + " N=" +
                    std::to_string(levels) + ": " + e.what());
      }
      const std::vector<double> probs = quant.positive_probs();
      for (CodeKind ck : codes) {
        if (!admissible(qk, ck, opts.pair_all)) continue;
        SweepRow row;
        row.source_id = model.family;
        row.quantizer_kind = qk;
        row.code_kind = ck;
        row.levels = levels;
        row.delta = qk == QuantKind::uniform ? quant.cell_size : std::nullopt;
        row.distortion = quant.distortion;
        row.log2_distortion = std::log2(quant.distortion);
        row.entropy_bits = quant.entropy_bits;
        try {
          const CodeLengths code = build_code(ck, probs, levels, opts.solver_tol);
          const AoIReport rep = aoi_analytic(probs, code, SamplingPolicy::zero_wait());
          row.aoi = rep.aoi;
          row.lower_bound = rep.lower_bound;
          row.zero_wait_margin = zero_wait_condition(code).margin;
          row.moment_ratio = code.mean_len > 0.0
                                 ? code.second_moment / (code.mean_len * code.mean_len)
                                 : std::numeric_limits<double>::quiet_NaN();
        } catch (const error& e) {
          throw error("run_sweep: " + model.family + " " + to_string(qk) + "+" +
                      to_string(ck) + " N=" + std::to_string(levels) + ": " + e.what());
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

AsymptoticsReport fit_asymptotics(const std::vector<SweepRow>& rows,
                                  const SourceModel& model, CodeKind slope_code,
                                  int window) {
  if (window < 3) throw parameter_error("fit_asymptotics: requires window >= 3");

  std::map<int, const SweepRow*> family;  // N -> row, uniform + slope_code only
  for (const SweepRow& r : rows) {
    if (r.quantizer_kind == QuantKind::uniform && r.code_kind == slope_code) {
      family[r.levels] = &r;
    }
  }
  if (static_cast<int>(family.size()) < window) {
    throw parameter_error("fit_asymptotics: needs at least `window` uniform rows of the slope code with distinct N");
  }

  std::vector<const SweepRow*> tail;
  for (auto it = family.rbegin(); it != family.rend() && static_cast<int>(tail.size()) < window; ++it) {
    tail.push_back(it->second);
  }

  double mx = 0.0, my = 0.0;
  for (const SweepRow* r : tail) {
    mx += r->log2_distortion;
    my += r->aoi;
  }
  mx /= tail.size();
  my /= tail.size();
  double sxx = 0.0, sxy = 0.0;
  for (const SweepRow* r : tail) {
    sxx += (r->log2_distortion - mx) * (r->log2_distortion - mx);
    sxy += (r->log2_distortion - mx) * (r->aoi - my);
  }
  if (!(sxx > 0.0)) throw parameter_error("fit_asymptotics: degenerate distortion spread");

  AsymptoticsReport rep;
  rep.slope_estimate = sxy / sxx;

  const SweepRow* top = family.rbegin()->second;
  if (!top->delta.has_value()) throw parameter_error("fit_asymptotics: largest-N row lacks delta");
  rep.intercept_gap = top->aoi + 1.5 * std::log2(*top->delta) - 1.5 * model.diff_entropy_bits;

  // Integer penalty: max over matched (quantizer, N) pairs of any family.
  double gap_max = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& ri : rows) {
    if (!is_integer_code(ri.code_kind)) continue;
    for (const SweepRow& rr : rows) {
      if (rr.code_kind == real_counterpart(ri.code_kind) && rr.levels == ri.levels &&
          rr.quantizer_kind == ri.quantizer_kind) {
        const double g = ri.aoi - rr.aoi;
        if (std::isnan(gap_max) || g > gap_max) gap_max = g;
      }
    }
  }
  rep.integer_gap_max = gap_max;

  // Shannon-vs-optimal gap at the largest N where both real codes exist.
  rep.shannon_vs_optimal_gap = std::numeric_limits<double>::quiet_NaN();
  for (auto it = family.rbegin(); it != family.rend(); ++it) {
    const SweepRow* shannon = nullptr;
    const SweepRow* optimal = nullptr;
    for (const SweepRow& r : rows) {
      if (r.quantizer_kind != QuantKind::uniform || r.levels != it->first) continue;
      if (r.code_kind == CodeKind::shannon_real) shannon = &r;
      if (r.code_kind == CodeKind::aoi_opt_real) optimal = &r;
    }
    if (shannon != nullptr && optimal != nullptr) {
      rep.shannon_vs_optimal_gap = shannon->aoi - optimal->aoi;
      break;
    }
  }
  return rep;
}

}  // namespace agequant
