#ifndef SYNSQ_STATLAB_HPP
#define SYNSQ_STATLAB_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "synsq/synchrosqueeze.hpp"

namespace synsq {

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);

// Per-trial seed derived from (base seed, cell index, trial index) through a
// mixing function, so cells and trials are statistically independent and the
// result does not depend on scheduling order.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial);

// ---------------------------------------------------------------------------
// Plans and tables
// ---------------------------------------------------------------------------

struct ExperimentPlan {
  enum class Kind { kEmdVsRed, kEmdVsNoise, kProbEstimate, kComponentTest, kCoeffVariance };

  Kind kind = Kind::kEmdVsRed;
  std::vector<int> red_values{1, 2, 4, 8, 10, 16};
  std::vector<double> s_values{0.75};
  std::vector<double> sigma2_values{1.0};
  std::vector<int> n_values{64, 128, 256};
  int trials = 20;
  std::uint64_t base_seed = 0;

  double fs = 1024.0;            // 1D experiment sampling rate
  Band band{8.0, 64.0};          // chirp experiment band / v grid
  double fs2d = 256.0;           // component-test sampling rate
  Band band2d{20.0, 120.0};      // component-test band
  double bin_width = 1.0;
  double delta = 1e-2;
  ThresholdMode threshold_mode = ThresholdMode::kR;

  double tol_factor = 0.05;           // "good estimation" relative IF error
  double probe_threshold_sigmas = 2.0;  // S_delta level in noise sigmas (prob estimate)

  std::string output_path;

  void validate() const;
};

struct ExperimentTable {
  std::vector<std::pair<std::string, std::string>> header;  // reproducibility info
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// CSV serialization: '#'-prefixed header lines, column names, then rows.
// Byte-identical for identical tables.
std::string table_to_csv(const ExperimentTable& table);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

// EMD of the redundant SST of a noisy chirp versus the ideal distribution,
// over a (red, sigma2) grid at fixed s = s_values[0].
ExperimentTable run_emd_vs_red(const ExperimentPlan& plan);

// Same pipeline over an (s, sigma2) grid at fixed red = red_values[0].
// s == 1 from the plan is run as 1 - 1e-3 (flagged in the header) to stay
// inside the transform's validity domain.
ExperimentTable run_emd_vs_noise(const ExperimentPlan& plan);

struct ProbabilityEstimate {
  double p_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  int successes = 0;
  int trials = 0;
  int empty_trials = 0;  // trials with no surviving masked point (counted as failures)
};

// Fraction of trials where the IF estimate at a random masked point of
// Z_1 cap S_delta for f(x) = e^{2 pi i N x} has relative error <= tol_factor;
// 95% Wilson interval attached. The S_delta level is probe_sigmas * sigma
// (falling back to 1e-2 when noiseless).
ProbabilityEstimate estimate_probability(int n_freq, double s, double sigma2, double tol_factor,
                                         int trials, std::uint64_t base_seed, double fs = 1024.0,
                                         double probe_sigmas = 2.0);

// Grid wrapper over (n_values x s_values) at sigma2 = sigma2_values[0].
ExperimentTable run_prob_estimate(const ExperimentPlan& plan);

struct VarianceProbePoint {
  double a = 0.0;  // center frequency in Hz
  double b = 0.5;  // position in [0,1)
};

// Empirical variance of W_e(a,b) over white-noise realizations against the
// theoretical sigma2 * ||w||^2 (= sigma2 under unit normalization), plus an
// independence probe between two centers with disjoint supports (reported in
// the header).
ExperimentTable coeff_variance_check(double sigma2, int trials,
                                     const std::vector<VarianceProbePoint>& points,
                                     std::uint64_t base_seed, double fs = 1024.0, double s = 0.75);

struct ComponentTestResult {
  ExperimentTable table;
  // Per-trial ridge concentration (fraction of x1 whose stacked argmax lies
  // within 2 bins of the oracle wave vector component).
  std::vector<double> concentration_sig;    // warped + sigma2_values[0] noise
  std::vector<double> concentration_sig2;   // warped + sigma2_values[1] noise
  std::vector<double> concentration_noise;  // noise only
};

// Selective-max component presence test on the 2D warped plane wave.
ComponentTestResult component_test(const ExperimentPlan& plan);

// Dispatch by plan.kind (CLI entry point).
ExperimentTable run_experiment(const ExperimentPlan& plan);

// Shared helpers.
double wilson_halfwidth(double p_hat, int n);
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(const std::vector<double>& xs);

}  // namespace synsq

#endif  // SYNSQ_STATLAB_HPP
