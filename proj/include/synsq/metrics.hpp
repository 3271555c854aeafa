#ifndef SYNSQ_METRICS_HPP
#define SYNSQ_METRICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "synsq/synchrosqueeze.hpp"

namespace synsq {

// Ideal time-frequency distribution D(v,x) = delta(v - q(x)), discretized to
// one hot bin per b column (-1 where q(b) falls outside the v grid).
struct IdealDistribution {
  VAxis v_axis;
  int b_count = 0;
  std::vector<std::int32_t> hot;
  std::int64_t out_of_band = 0;
};

// oracle_if maps a lattice position x in [0,1) to the true IF in Hz.
IdealDistribution ideal_distribution(const std::function<double(double)>& oracle_if,
                                     const VAxis& v_axis, int b_count);

struct EmdResult {
  double value = 0.0;          // average per-slice 1D EMD, in Hz
  std::int64_t used = 0;       // b slices entering the average
  std::int64_t skipped = 0;    // zero-mass T slices (or out-of-band D) excluded
};

// Per b: L1-normalize the T slice and compute the 1D earth mover's distance
// against the one-hot D slice via cumulative sums, EMD = sum_v |CDF_T -
// CDF_D| * dv; slices where either side is empty are excluded and counted.
// Requires a dense (1D or stacked) distribution on the same grid as D.
EmdResult emd_score(const TFDistribution& t, const IdealDistribution& d);

// Independent verifier: exact 1D optimal transport between two small
// histograms (lengths <= 32, both summing to 1 within 1e-9) by greedy mass
// matching. Cost is |i - j| * bin_width per unit mass.
double emd_lp_oracle(std::span<const double> p, std::span<const double> q, double bin_width);

// Cumulative-sum EMD between two already-normalized histograms (test hook and
// emd_score workhorse).
double emd_cdf(std::span<const double> p, std::span<const double> q, double bin_width);

}  // namespace synsq

#endif  // SYNSQ_METRICS_HPP
