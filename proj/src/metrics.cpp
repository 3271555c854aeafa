#include "synsq/metrics.hpp"

#include <cmath>

#include "synsq/errors.hpp"

namespace synsq {

IdealDistribution ideal_distribution(const std::function<double(double)>& oracle_if,
                                     const VAxis& v_axis, int b_count) {
  if (b_count < 1) throw ParameterError("ideal distribution: empty b lattice");
  IdealDistribution d;
  d.v_axis = v_axis;
  d.b_count = b_count;
  d.hot.resize(static_cast<std::size_t>(b_count));
  for (int b = 0; b < b_count; ++b) {
    const double q = oracle_if(static_cast<double>(b) / b_count);
    const int bin = v_axis.bin_of(q);
    d.hot[static_cast<std::size_t>(b)] = bin;
    if (bin < 0) ++d.out_of_band;
  }
  return d;
}

EmdResult emd_score(const TFDistribution& t, const IdealDistribution& d) {
  if (t.v_dim != 1) throw InputError("emd: needs a dense 1D or stacked distribution");
  const VAxis& ax = t.v_axes[0];
  if (std::abs(ax.lo - d.v_axis.lo) > 1e-9 || std::abs(ax.step - d.v_axis.step) > 1e-9 ||
      ax.bins() != d.v_axis.bins() || t.b_shape[0] != d.b_count || t.b_shape[1] != 1)
    throw InputError("emd: distribution and ideal grids do not match");

  const int nv = ax.bins();
  const std::int64_t nb = t.b_shape[0];

  EmdResult res;
  KahanSum total;
  for (std::int64_t b = 0; b < nb; ++b) {
    const int hot = d.hot[static_cast<std::size_t>(b)];
    double mass = 0.0;
    for (int v = 0; v < nv; ++v) mass += t.dense[static_cast<std::size_t>(v) * nb + b];
    if (hot < 0 || mass <= 0.0) {
      ++res.skipped;
      continue;
    }
    // EMD = sum_v |CDF_T - CDF_D| * dv with the T slice L1-normalized.
    double cdf_t = 0.0;
    double slice = 0.0;
    for (int v = 0; v < nv; ++v) {
      cdf_t += t.dense[static_cast<std::size_t>(v) * nb + b] / mass;
      const double cdf_d = v >= hot ? 1.0 : 0.0;
      slice += std::abs(cdf_t - cdf_d);
    }
    total.add(slice * ax.step);
    ++res.used;
  }
  if (res.used == 0) throw InputError("emd: no usable b slices (all empty)");
  res.value = total.sum / static_cast<double>(res.used);
  return res;
}

double emd_cdf(std::span<const double> p, std::span<const double> q, double bin_width) {
  if (p.size() != q.size()) throw ParameterError("emd: histogram lengths differ");
  double cp = 0.0, cq = 0.0, out = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cp += p[i];
    cq += q[i];
    out += std::abs(cp - cq);
  }
  return out * bin_width;
}

double emd_lp_oracle(std::span<const double> p, std::span<const double> q, double bin_width) {
  if (p.size() != q.size()) throw ParameterError("emd oracle: histogram lengths differ");
  if (p.size() > 32) throw ParameterError("emd oracle: histograms longer than 32 bins");
  double sp = 0.0, sq = 0.0;
  for (double x : p) sp += x;
  for (double x : q) sq += x;
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw ParameterError("emd oracle: histograms must sum to 1");

  // Greedy transport: in 1D moving the leftmost surplus to the leftmost
  // deficit is optimal.
  std::vector<double> supply(p.begin(), p.end());
  std::vector<double> demand(q.begin(), q.end());
  std::size_t i = 0, j = 0;
  double cost = 0.0;
  while (i < supply.size() && j < demand.size()) {
    if (supply[i] <= 1e-15) {
      ++i;
      continue;
    }
    if (demand[j] <= 1e-15) {
      ++j;
      continue;
    }
    const double moved = std::min(supply[i], demand[j]);
    cost += moved * std::abs(static_cast<double>(i) - static_cast<double>(j)) * bin_width;
    supply[i] -= moved;
    demand[j] -= moved;
  }
  return cost;
}

}  // namespace synsq
