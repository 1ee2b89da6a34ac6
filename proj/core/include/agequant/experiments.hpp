#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agequant/quantizer.hpp"
#include "agequant/source_model.hpp"

namespace agequant {

enum class QuantKind { uniform, lloyd_max };
enum class CodeKind {
  shannon_real,
  shannon_int,
  aoi_opt_real,
  aoi_opt_int,
  const_real,
  const_int,
};

const char* to_string(QuantKind k);
const char* to_string(CodeKind k);
std::optional<QuantKind> quant_kind_from_string(const std::string& s);
std::optional<CodeKind> code_kind_from_string(const std::string& s);

/// True for shannon_int / aoi_opt_int / const_int.
bool is_integer_code(CodeKind k);
/// Real-valued counterpart of an integer code kind (identity for real kinds).
CodeKind real_counterpart(CodeKind k);

/// One point of the AoI-versus-log-distortion tradeoff under zero-wait.
struct SweepRow {
  std::string source_id;
  QuantKind quantizer_kind = QuantKind::uniform;
  CodeKind code_kind = CodeKind::shannon_real;
  int levels = 0;
  std::optional<double> delta;  // uniform quantizers only
  double distortion = 0.0;
  double log2_distortion = 0.0;
  double entropy_bits = 0.0;
  double aoi = 0.0;          // zero-wait AoI
  double lower_bound = 0.0;  // (3/2) H
  double zero_wait_margin = 0.0;
  double moment_ratio = 0.0;  // E[L^2] / E[L]^2
};

struct SweepOptions {
  RepPoints rep_points = RepPoints::centroid;
  double solver_tol = 1e-10;
  double lloyd_tol = 1e-12;
  int lloyd_max_iters = 10000;
  // Default pairing restricts Lloyd-Max to constant-length codes and the
  // uniform quantizer to Shannon/AoI-optimal codes; pair_all lifts that.
  bool pair_all = false;
};

/// One row per admissible (quantizer, code, N) combination, deterministic.
/// Solver/convergence failures are rethrown with the offending combination
/// named in the message.
std::vector<SweepRow> run_sweep(const SourceModel& model,
                                const std::vector<int>& levels_list,
                                const std::vector<CodeKind>& codes,
                                const std::vector<QuantKind>& quantizers,
                                const SweepOptions& opts = {});

/// Asymptotic diagnostics of a sweep for one source.
struct AsymptoticsReport {
  double slope_estimate = 0.0;   // LS slope of aoi vs log2 D, largest `window` N
  double intercept_gap = 0.0;    // aoi + (3/2) log2 delta - (3/2) h(X) at largest N
  double integer_gap_max = 0.0;  // max over N of (integer aoi - real aoi)
  double shannon_vs_optimal_gap = 0.0;  // at the largest common N (NaN if absent)
};

/// Slope/intercept are fitted on the uniform-quantizer rows of slope_code;
/// needs at least `window` >= 3 of them with distinct N, else parameter_error.
AsymptoticsReport fit_asymptotics(const std::vector<SweepRow>& rows,
                                  const SourceModel& model,
                                  CodeKind slope_code = CodeKind::aoi_opt_real,
                                  int window = 3);

/// Metadata echoed into the CSV header ('#'-prefixed lines). No timestamps,
/// so reruns with the same config are byte-identical.
struct CsvMetadata {
  std::string tool_version;
  std::string source_id;
  std::string rep_points;
  std::string rng_name;  // empty when no simulation was involved
  std::optional<std::uint64_t> seed;
  double solver_tol = 0.0;
  double integration_tol = 0.0;
  std::vector<std::string> extra;  // free-form "key=value" lines
};

/// Writes rows as CSV: metadata lines, a fixed documented header, one line per
/// row in input order. I/O failures carry the path in the message.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path,
              const CsvMetadata& meta);

/// Self-contained SVG of AoI vs log2 D: one polyline per (quantizer, code)
/// series plus the (3/2)H lower-bound series per quantizer kind.
void emit_plot(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace agequant
