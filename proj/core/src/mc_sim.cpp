#include "agequant/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "agequant/errors.hpp"

namespace agequant {
namespace {

constexpr int kBatches = 32;

double batch_std_error(const std::vector<double>& means) {
  const int b = static_cast<int>(means.size());
  if (b < 2) return std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : means) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (b - 1)) / std::sqrt(static_cast<double>(b));
}

}  // namespace

SimResult simulate(const SourceModel& model, const QuantizerSpec& quant,
                   const CodeLengths& code, const SimConfig& cfg) {
  const auto positive = quant.positive_cells();
  if (positive.size() != code.lengths.size()) {
    throw parameter_error("simulate: code is not aligned to the quantizer's positive cells");
  }
  if (cfg.num_updates < 1) throw parameter_error("simulate: requires num_updates >= 1");
  if (cfg.warmup_updates < 0) throw parameter_error("simulate: requires warmup_updates >= 0");
  if (cfg.num_updates <= cfg.warmup_updates) {
    throw parameter_error("simulate: requires num_updates > warmup_updates");
  }
  // The first delivery only anchors the age clock, so at least one update is
  // always treated as warmup.
  const std::int64_t warmup = std::max<std::int64_t>(cfg.warmup_updates, 1);
  if (cfg.num_updates <= warmup) {
    throw parameter_error("simulate: no counted updates after the first delivery");
  }
  const std::int64_t counted = cfg.num_updates - warmup;

  // Cell -> code slot; cells with zero probability borrow the nearest coded
  // cell (unreachable in exact arithmetic, kept as a guard).
  const std::size_t n_cells = quant.probs.size();
  std::vector<std::ptrdiff_t> slot(n_cells, -1);
  for (std::size_t s = 0; s < positive.size(); ++s) slot[positive[s]] = static_cast<std::ptrdiff_t>(s);
  for (std::size_t i = 0; i < n_cells; ++i) {
    if (slot[i] >= 0) continue;
    for (std::size_t d = 1; d < n_cells; ++d) {
      if (i >= d && slot[i - d] >= 0) {
        slot[i] = slot[i - d];
        break;
      }
      if (i + d < n_cells && slot[i + d] >= 0) {
        slot[i] = slot[i + d];
        break;
      }
    }
  }

  std::mt19937_64 rng(cfg.seed);
  const auto next_uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const int batches = counted >= kBatches ? kBatches : 1;
  std::vector<double> batch_area(batches, 0.0), batch_time(batches, 0.0);
  std::vector<double> batch_sqerr(batches, 0.0);
  std::vector<std::int64_t> batch_n(batches, 0);

  double prev_len = 0.0;
  for (std::int64_t k = 1; k <= cfg.num_updates; ++k) {
    const double x = inverse_cdf_sample(model, next_uniform());
    auto it = std::upper_bound(quant.endpoints.begin(), quant.endpoints.end(), x);
    std::size_t cell = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - quant.endpoints.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(n_cells) - 1));
    const double len = code.lengths[static_cast<std::size_t>(slot[cell])];
    const double wait = k == 1 ? 0.0 : cfg.policy.waiting(prev_len);

    if (k > warmup) {
      // Sawtooth trapezoid between the previous and this delivery: the age
      // climbs from prev_len across the cycle wait + len.
      const double cycle = wait + len;
      const double area = cycle * prev_len + 0.5 * cycle * cycle;
      const double err = x - quant.reps[cell];
      const std::int64_t j = k - warmup - 1;
      const int b = static_cast<int>(j * batches / counted);
      batch_area[b] += area;
      batch_time[b] += cycle;
      batch_sqerr[b] += err * err;
      batch_n[b] += 1;
    }
    prev_len = len;
  }

  SimResult r;
  double area = 0.0, time = 0.0, sqerr = 0.0;
  std::vector<double> age_means(batches), mse_means(batches);
  for (int b = 0; b < batches; ++b) {
    area += batch_area[b];
    time += batch_time[b];
    sqerr += batch_sqerr[b];
    age_means[b] = batch_time[b] > 0.0 ? batch_area[b] / batch_time[b]
                                       : std::numeric_limits<double>::quiet_NaN();
    mse_means[b] = batch_n[b] > 0 ? batch_sqerr[b] / static_cast<double>(batch_n[b])
                                  : std::numeric_limits<double>::quiet_NaN();
  }
  if (!(time > 0.0)) {
    throw degenerate_code_error("simulate: total service+wait time is zero");
  }
  r.time_avg_age = area / time;
  r.empirical_mse = sqerr / static_cast<double>(counted);
  r.std_error = batch_std_error(age_means);
  r.mse_std_error = batch_std_error(mse_means);
  r.total_time = time;
  r.updates_counted = counted;
  return r;
}

}  // namespace agequant
