#pragma once

#include <cstdint>

#include "agequant/coder.hpp"
#include "agequant/quantizer.hpp"
#include "agequant/sampler.hpp"
#include "agequant/source_model.hpp"

namespace agequant {

/// Name of the generator behind simulate(), recorded in output metadata.
inline constexpr const char* kSimRngName = "mt19937_64";

struct SimConfig {
  std::int64_t num_updates = 0;
  std::uint64_t seed = 0;
  SamplingPolicy policy = SamplingPolicy::zero_wait();
  std::int64_t warmup_updates = 1000;
};

struct SimResult {
  double time_avg_age = 0.0;
  double std_error = 0.0;      // batch-means standard error of the age
  double empirical_mse = 0.0;
  double mse_std_error = 0.0;  // batch-means standard error of the MSE
  double total_time = 0.0;     // sum of (Z_k + L_k) over counted updates
  std::int64_t updates_counted = 0;
};

/// Seeded discrete-event simulation of the status-update sawtooth age process.
///
/// Update k is sampled by inverse-CDF from the seeded generator, quantized to
/// its cell, and served for the cell's codeword length L_k. Waiting follows
/// the renewal convention under which the analytic formula holds: the wait
/// inserted before generating update k+1 is a deterministic function of the
/// just-completed service, Z_{k+1} = z(L_k). The age drops to L_k at each
/// delivery; the time average is accumulated from exact trapezoid areas.
/// Standard errors come from batch means over 32 equal batches after warmup.
///
/// Identical (seed, inputs) produce bit-identical results.
SimResult simulate(const SourceModel& model, const QuantizerSpec& quant,
                   const CodeLengths& code, const SimConfig& cfg);

}  // namespace agequant
