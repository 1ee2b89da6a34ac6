#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "agequant/errors.hpp"
#include "agequant/experiments.hpp"

namespace agequant {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "source_id,quantizer,code,levels,delta,distortion,log2_distortion,"
    "entropy_bits,aoi,lower_bound,zero_wait_margin,moment_ratio";

// Fixed palette, one entry per (quantizer, code) series plus bounds.
constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;  // (log2 D, aoi)
};

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path,
              const CsvMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw error("emit_csv: cannot open " + path);
  out << "# agequant sweep, tool_version=" << meta.tool_version << "\n";
  out << "# source=" << meta.source_id << "\n";
  out << "# rep_points=" << meta.rep_points << "\n";
  out << "# solver_tol=" << fmt(meta.solver_tol)
      << " integration_tol=" << fmt(meta.integration_tol) << "\n";
  if (meta.seed.has_value()) out << "# seed=" << *meta.seed << "\n";
  if (!meta.rng_name.empty()) out << "# rng=" << meta.rng_name << "\n";
  for (const std::string& line : meta.extra) out << "# " << line << "\n";
  out << "# columns: " << kCsvHeader << "\n";
  out << kCsvHeader << "\n";
  for (const SweepRow& r : rows) {
    out << r.source_id << ',' << to_string(r.quantizer_kind) << ','
        << to_string(r.code_kind) << ',' << r.levels << ','
        << (r.delta.has_value() ? fmt(*r.delta) : std::string{}) << ','
        << fmt(r.distortion) << ',' << fmt(r.log2_distortion) << ','
        << fmt(r.entropy_bits) << ',' << fmt(r.aoi) << ',' << fmt(r.lower_bound) << ','
        << fmt(r.zero_wait_margin) << ',' << fmt(r.moment_ratio) << "\n";
  }
  if (!out) throw error("emit_csv: write failed for " + path);
}

void emit_plot(const std::vector<SweepRow>& rows, const std::string& path) {
  std::vector<Series> series;
  auto find_or_add = [&series](const std::string& label) -> Series& {
    for (Series& s : series) {
      if (s.label == label) return s;
    }
    series.push_back({label, {}});
    return series.back();
  };
  for (const SweepRow& r : rows) {
    const std::string q = to_string(r.quantizer_kind);
    find_or_add(q + "+" + to_string(r.code_kind)).pts.emplace_back(r.log2_distortion, r.aoi);
  }
  // One (3/2)H lower-bound series per quantizer kind, taken from the first
  // code family seen for it (the bound only depends on the quantizer).
  for (QuantKind qk : {QuantKind::uniform, QuantKind::lloyd_max}) {
    const SweepRow* first = nullptr;
    for (const SweepRow& r : rows) {
      if (r.quantizer_kind == qk) {
        first = &r;
        break;
      }
    }
    if (first == nullptr) continue;
    Series& s = find_or_add(std::string(to_string(qk)) + " (3/2)H");
    for (const SweepRow& r : rows) {
      if (r.quantizer_kind == qk && r.code_kind == first->code_kind) {
        s.pts.emplace_back(r.log2_distortion, r.lower_bound);
      }
    }
  }
  series.erase(std::remove_if(series.begin(), series.end(),
                              [](const Series& s) { return s.pts.empty(); }),
               series.end());

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool have = false;
  for (const Series& s : series) {
    for (auto [x, y] : s.pts) {
      if (!have) {
        xmin = xmax = x;
        ymin = ymax = y;
        have = true;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!have) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  constexpr double W = 860, H = 560, L = 70, R = 230, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;
  const auto X = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  const auto Y = [&](double y) { return T + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ofstream out(path);
  if (!out) throw error("emit_plot: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << L << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
         "AoI versus log2 distortion (zero-wait)</text>\n";
  // axes
  out << "<line x1=\"" << L << "\" y1=\"" << T + ph << "\" x2=\"" << L + pw << "\" y2=\""
      << T + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << T + ph
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 6; ++i) {
    const double x = xmin + (xmax - xmin) * i / 6.0;
    const double y = ymin + (ymax - ymin) * i / 6.0;
    out << "<line x1=\"" << X(x) << "\" y1=\"" << T + ph << "\" x2=\"" << X(x) << "\" y2=\""
        << T + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << X(x) << "\" y=\"" << T + ph + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt3(x) << "</text>\n";
    out << "<line x1=\"" << L - 5 << "\" y1=\"" << Y(y) << "\" x2=\"" << L << "\" y2=\""
        << Y(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << L - 8 << "\" y=\"" << Y(y) + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt3(y)
        << "</text>\n";
  }
  out << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 16
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
         "log2 D</text>\n";
  out << "<text x=\"18\" y=\"" << T + ph / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << T + ph / 2 << ")\" text-anchor=\"middle\">AoI</text>\n";

  int ci = 0;
  double ly = T + 10;
  for (const Series& s : series) {
    const char* color = kPalette[ci % 10];
    std::vector<std::pair<double, double>> pts = s.pts;
    std::sort(pts.begin(), pts.end());
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : pts) out << X(x) << ',' << Y(y) << ' ';
    out << "\"/>\n";
    for (auto [x, y] : pts) {
      out << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"2.6\" fill=\"" << color
          << "\"/>\n";
    }
    out << "<line x1=\"" << L + pw + 14 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << L + pw + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    ly += 20;
    ++ci;
  }
  out << "</svg>\n";
  if (!out) throw error("emit_plot: write failed for " + path);
}

}  // namespace agequant
