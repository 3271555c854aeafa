#include "synsq/statlab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "synsq/errors.hpp"
#include "synsq/metrics.hpp"
#include "synsq/parallel.hpp"
#include "synsq/signals.hpp"
#include "synsq/version.hpp"

namespace synsq {

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial) {
  return splitmix64(splitmix64(base ^ splitmix64(cell + 1)) ^ splitmix64(trial + 0x5151ull));
}

// ---------------------------------------------------------------------------
// Plans / tables
// ---------------------------------------------------------------------------

void ExperimentPlan::validate() const {
  if (trials < 1) throw ParameterError("experiment plan: trials must be >= 1");
  if (red_values.empty() || s_values.empty() || sigma2_values.empty() || n_values.empty())
    throw ParameterError("experiment plan: parameter axes must be nonempty");
  for (int r : red_values)
    if (r < 1) throw ParameterError("experiment plan: red values must be >= 1");
  for (double v : sigma2_values)
    if (v < 0.0) throw ParameterError("experiment plan: sigma2 values must be >= 0");
  for (double sv : s_values)
    if (!(sv > 0.5) || sv > 1.0)
      throw ParameterError("experiment plan: s values must lie in (1/2, 1]");
  if (!(fs >= 128.0)) throw ParameterError("experiment plan: fs too small");
}

namespace {

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> base_header(const ExperimentPlan& plan,
                                                             const char* kind) {
  return {{"experiment", kind},
          {"base_seed", std::to_string(plan.base_seed)},
          {"version", kVersionTag},
          {"trials", std::to_string(plan.trials)}};
}

// s == 1 comparison mode runs as 1 - eta inside the (1/2,1) validity domain.
constexpr double kSOneSubstitute = 1.0 - 1e-3;

double effective_s(double s) { return s >= 1.0 ? kSOneSubstitute : s; }

// Runs trials for every cell in index order; fn must be pure given
// (cell, trial, seed). Parallel over the flattened grid, reduced in order.
std::vector<std::vector<double>> run_cells(int n_cells, int trials, std::uint64_t base_seed,
                                           const std::function<double(int, int, std::uint64_t)>& fn) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n_cells),
                                       std::vector<double>(static_cast<std::size_t>(trials)));
  parallel_for(static_cast<std::int64_t>(n_cells) * trials, [&](std::int64_t idx) {
    const int cell = static_cast<int>(idx / trials);
    const int trial = static_cast<int>(idx % trials);
    out[static_cast<std::size_t>(cell)][static_cast<std::size_t>(trial)] =
        fn(cell, trial, trial_seed(base_seed, static_cast<std::uint64_t>(cell),
                                   static_cast<std::uint64_t>(trial)));
  });
  return out;
}

}  // namespace

std::string table_to_csv(const ExperimentTable& table) {
  std::string out;
  for (const auto& [k, v] : table.header) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ",";
    out += table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += fmt_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  if (xs.empty()) return m;
  KahanSum sum;
  for (double x : xs) sum.add(x);
  m.mean = sum.sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    KahanSum sq;
    for (double x : xs) sq.add((x - m.mean) * (x - m.mean));
    m.std = std::sqrt(sq.sum / static_cast<double>(xs.size() - 1));
  }
  return m;
}

double wilson_halfwidth(double p_hat, int n) {
  constexpr double z = 1.959963984540054;  // 95%
  const double z2 = z * z;
  return z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

// ---------------------------------------------------------------------------
// Chirp EMD experiments
// ---------------------------------------------------------------------------

namespace {

double chirp_emd_trial(const ExperimentPlan& plan, double s, int red, double sigma2,
                       std::uint64_t seed, const IdealDistribution& ideal) {
  Signal g = gen_single_chirp(plan.fs);
  if (sigma2 > 0.0) {
    NoiseSpec noise;
    noise.sigma2 = sigma2;
    noise.seed = seed;
    g = add_noise(g, noise);
  }

  FrameSpec spec;
  spec.dim = 1;
  spec.s = s;
  spec.red = red;
  spec.band = plan.band;
  spec.signal_shape = g.shape;

  SqueezeConfig config;
  config.delta = plan.delta;
  config.threshold_mode = plan.threshold_mode;
  config.bin_width = plan.bin_width;

  const TFDistribution t = redundant_sst(g, spec, config);
  return emd_score(t, ideal).value;
}

IdealDistribution chirp_ideal(const ExperimentPlan& plan) {
  const VAxis axis{plan.band.lo, plan.band.hi, plan.bin_width};
  return ideal_distribution([](double x) { return oracle_if("chirp", x); }, axis,
                            static_cast<int>(plan.fs));
}

}  // namespace

ExperimentTable run_emd_vs_red(const ExperimentPlan& plan) {
  plan.validate();
  const double s = effective_s(plan.s_values.front());
  const IdealDistribution ideal = chirp_ideal(plan);

  const int n_red = static_cast<int>(plan.red_values.size());
  const int n_sig = static_cast<int>(plan.sigma2_values.size());
  auto values = run_cells(n_red * n_sig, plan.trials, plan.base_seed,
                          [&](int cell, int, std::uint64_t seed) {
                            const int red = plan.red_values[static_cast<std::size_t>(cell / n_sig)];
                            const double sig = plan.sigma2_values[static_cast<std::size_t>(cell % n_sig)];
                            return chirp_emd_trial(plan, s, red, sig, seed, ideal);
                          });

  ExperimentTable table;
  table.header = base_header(plan, "emd_vs_red");
  table.header.emplace_back("s", fmt_double(s));
  table.columns = {"red", "sigma2", "emd_mean", "emd_std", "trials", "seed"};
  for (int cell = 0; cell < n_red * n_sig; ++cell) {
    const MeanStd m = mean_std(values[static_cast<std::size_t>(cell)]);
    table.rows.push_back({static_cast<double>(plan.red_values[static_cast<std::size_t>(cell / n_sig)]),
                          plan.sigma2_values[static_cast<std::size_t>(cell % n_sig)], m.mean, m.std,
                          static_cast<double>(plan.trials), static_cast<double>(plan.base_seed)});
  }
  return table;
}

ExperimentTable run_emd_vs_noise(const ExperimentPlan& plan) {
  plan.validate();
  const int red = plan.red_values.front();
  const IdealDistribution ideal = chirp_ideal(plan);

  const int n_s = static_cast<int>(plan.s_values.size());
  const int n_sig = static_cast<int>(plan.sigma2_values.size());
  auto values = run_cells(n_s * n_sig, plan.trials, plan.base_seed,
                          [&](int cell, int, std::uint64_t seed) {
                            const double s = effective_s(plan.s_values[static_cast<std::size_t>(cell / n_sig)]);
                            const double sig = plan.sigma2_values[static_cast<std::size_t>(cell % n_sig)];
                            return chirp_emd_trial(plan, s, red, sig, seed, ideal);
                          });

  ExperimentTable table;
  table.header = base_header(plan, "emd_vs_noise");
  table.header.emplace_back("red", std::to_string(red));
  bool flagged = false;
  for (double sv : plan.s_values)
    if (sv >= 1.0) flagged = true;
  if (flagged)
    table.header.emplace_back("s_one_note", "s=1 rows run at s=" + fmt_double(kSOneSubstitute));
  table.columns = {"s", "sigma2", "emd_mean", "emd_std", "trials", "seed"};
  for (int cell = 0; cell < n_s * n_sig; ++cell) {
    const MeanStd m = mean_std(values[static_cast<std::size_t>(cell)]);
    table.rows.push_back({effective_s(plan.s_values[static_cast<std::size_t>(cell / n_sig)]),
                          plan.sigma2_values[static_cast<std::size_t>(cell % n_sig)], m.mean, m.std,
                          static_cast<double>(plan.trials), static_cast<double>(plan.base_seed)});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Probability estimate (theorem trend probe)
// ---------------------------------------------------------------------------

ProbabilityEstimate estimate_probability(int n_freq, double s, double sigma2, double tol_factor,
                                         int trials, std::uint64_t base_seed, double fs,
                                         double probe_sigmas) {
  if (n_freq < 4 || n_freq > static_cast<int>(fs) / 2 - 1)
    throw ParameterError("estimate_probability: N must fit below Nyquist");
  if (trials < 1) throw ParameterError("estimate_probability: trials must be >= 1");
  const double s_eff = effective_s(s);

  // Plane-wave IMT f(x) = e^{2 pi i N x}.
  const int n = static_cast<int>(fs);
  Signal pw;
  pw.dim = 1;
  pw.shape = {n, 1};
  pw.sample_rate = {fs, 1.0};
  pw.samples.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    pw.samples[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * n_freq * j / static_cast<double>(n));
  pw.provenance.generator = "planewave";

  // Sampling the frame index per trial dithers the ladder placement, so the
  // estimate reflects the transform rather than where one frame's centers
  // happen to land relative to N.
  constexpr int kProbeFrames = 16;
  FrameSpec spec;
  spec.dim = 1;
  spec.s = s_eff;
  spec.red = kProbeFrames;
  spec.band = Band{std::max(2.0, n_freq / 2.0), std::min(fs / 2.0, 2.0 * n_freq)};
  spec.signal_shape = pw.shape;
  spec.validate();

  // Z_1 centers (|a - N| <= a^s) of every frame, precomputed.
  std::array<std::vector<FrameCenter>, kProbeFrames> z1;
  for (int j = 0; j < kProbeFrames; ++j) {
    FrameSpec fj = spec;
    fj.frame_index = j;
    for (const FrameCenter& c : build_frame_grid(fj).centers)
      if (std::abs(c.abs_a - n_freq) <= std::pow(c.abs_a, s_eff)) z1[static_cast<std::size_t>(j)].push_back(c);
  }

  const double delta_probe = sigma2 > 0.0 ? probe_sigmas * std::sqrt(sigma2) : 1e-2;

  std::vector<int> outcome(static_cast<std::size_t>(trials), 0);  // 1 success, -1 empty
  parallel_for(trials, [&](std::int64_t t) {
    const std::uint64_t seed = trial_seed(base_seed, 0, static_cast<std::uint64_t>(t));
    Signal g = pw;
    if (sigma2 > 0.0) {
      NoiseSpec noise;
      noise.sigma2 = sigma2;
      noise.seed = seed;
      g = add_noise(g, noise);
    }
    const PreparedSpectrum spectrum = prepare_spectrum(g);
    SliceWorker worker(spectrum, spec);
    std::mt19937_64 pick(splitmix64(seed ^ 0xABCD1234ull));
    const auto& centers =
        z1[std::uniform_int_distribution<std::size_t>(0, kProbeFrames - 1)(pick)];

    std::vector<cplx> w;
    std::array<std::vector<cplx>, 2> gr;
    std::vector<double> estimates;  // v at masked Z_1 points
    for (const FrameCenter& c : centers) {
      worker.compute(c, w, &gr);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double n2 = std::norm(w[i]);
        if (n2 >= delta_probe * delta_probe)
          estimates.push_back((gr[0][i].imag() * w[i].real() - gr[0][i].real() * w[i].imag()) /
                              (kTwoPi * n2));
      }
    }
    if (estimates.empty()) {
      outcome[static_cast<std::size_t>(t)] = -1;  // recorded as failure, flagged
      return;
    }
    const double v = estimates[std::uniform_int_distribution<std::size_t>(0, estimates.size() - 1)(pick)];
    outcome[static_cast<std::size_t>(t)] =
        std::abs(v - n_freq) <= tol_factor * n_freq ? 1 : 0;
  });

  ProbabilityEstimate est;
  est.trials = trials;
  for (int o : outcome) {
    if (o == 1) ++est.successes;
    if (o == -1) ++est.empty_trials;
  }
  est.p_hat = static_cast<double>(est.successes) / trials;
  constexpr double z = 1.959963984540054;
  const double z2 = z * z;
  const double center = (est.p_hat + z2 / (2.0 * trials)) / (1.0 + z2 / trials);
  const double hw = wilson_halfwidth(est.p_hat, trials);
  est.wilson_lo = std::max(0.0, center - hw);
  est.wilson_hi = std::min(1.0, center + hw);
  return est;
}

ExperimentTable run_prob_estimate(const ExperimentPlan& plan) {
  plan.validate();
  const double sigma2 = plan.sigma2_values.front();

  ExperimentTable table;
  table.header = base_header(plan, "prob_estimate");
  table.header.emplace_back("sigma2", fmt_double(sigma2));
  table.header.emplace_back("tol_factor", fmt_double(plan.tol_factor));
  table.header.emplace_back("probe_threshold_sigmas", fmt_double(plan.probe_threshold_sigmas));
  table.columns = {"n", "s", "sigma2", "p_hat", "wilson_lo", "wilson_hi",
                   "successes", "empty_trials", "trials", "seed"};

  int cell = 0;
  for (int nf : plan.n_values)
    for (double s : plan.s_values) {
      const ProbabilityEstimate est = estimate_probability(
          nf, s, sigma2, plan.tol_factor, plan.trials,
          splitmix64(plan.base_seed ^ static_cast<std::uint64_t>(cell + 7)), plan.fs,
          plan.probe_threshold_sigmas);
      table.rows.push_back({static_cast<double>(nf), effective_s(s), sigma2, est.p_hat,
                            est.wilson_lo, est.wilson_hi, static_cast<double>(est.successes),
                            static_cast<double>(est.empty_trials), static_cast<double>(est.trials),
                            static_cast<double>(plan.base_seed)});
      ++cell;
    }
  return table;
}

// ---------------------------------------------------------------------------
// Coefficient variance check
// ---------------------------------------------------------------------------

ExperimentTable coeff_variance_check(double sigma2, int trials,
                                     const std::vector<VarianceProbePoint>& points,
                                     std::uint64_t base_seed, double fs, double s) {
  if (trials < 2) throw ParameterError("coeff_variance_check: needs at least 2 trials");
  if (points.empty()) throw ParameterError("coeff_variance_check: empty sample set");
  const int n = static_cast<int>(fs);

  FrameSpec spec;
  spec.dim = 1;
  spec.s = s;
  spec.signal_shape = {n, 1};
  spec.validate();
  const MotherWavePacket& mother = spec.mother;

  auto center_of = [&](double a) {
    FrameCenter c;
    c.a = {a, 0.0};
    c.abs_a = a;
    c.radius = std::pow(a, s) * mother.support_d();
    return c;
  };

  // Independence probe pair: disjoint supports.
  const FrameCenter probe_a = center_of(100.0);
  const FrameCenter probe_b = center_of(300.0);

  std::vector<std::vector<cplx>> coeffs(points.size(),
                                        std::vector<cplx>(static_cast<std::size_t>(trials)));
  std::vector<cplx> pair_a(static_cast<std::size_t>(trials)), pair_b(static_cast<std::size_t>(trials));

  parallel_for(trials, [&](std::int64_t t) {
    // Complex-typed container holding real white noise: no analytic doubling,
    // matching the theorems' W_e statistics.
    Signal e;
    e.dim = 1;
    e.shape = {n, 1};
    e.sample_rate = {fs, 1.0};
    e.is_real = false;
    e.samples.assign(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    e.provenance.generator = "zero";
    if (sigma2 > 0.0) {
      NoiseSpec noise;
      noise.sigma2 = sigma2;
      noise.seed = trial_seed(base_seed, 1, static_cast<std::uint64_t>(t));
      e = add_noise(e, noise);
    }
    const PreparedSpectrum spectrum = prepare_spectrum(e);
    SliceWorker worker(spectrum, spec);

    std::vector<cplx> w;
    for (std::size_t p = 0; p < points.size(); ++p) {
      worker.compute(center_of(points[p].a), w, nullptr);
      const std::size_t bi = static_cast<std::size_t>(points[p].b * n) % static_cast<std::size_t>(n);
      coeffs[p][static_cast<std::size_t>(t)] = w[bi];
    }
    worker.compute(probe_a, w, nullptr);
    pair_a[static_cast<std::size_t>(t)] = w[static_cast<std::size_t>(n) / 2];
    worker.compute(probe_b, w, nullptr);
    pair_b[static_cast<std::size_t>(t)] = w[static_cast<std::size_t>(n) / 2];
  });

  auto complex_variance = [](const std::vector<cplx>& xs) {
    cplx mean{0.0, 0.0};
    for (const cplx& x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (const cplx& x : xs) var += std::norm(x - mean);
    return var / static_cast<double>(xs.size() - 1);
  };

  // Correlation magnitude between the disjoint-support probes.
  double corr = 0.0;
  {
    cplx ma{0, 0}, mb{0, 0};
    for (int t = 0; t < trials; ++t) {
      ma += pair_a[static_cast<std::size_t>(t)];
      mb += pair_b[static_cast<std::size_t>(t)];
    }
    ma /= static_cast<double>(trials);
    mb /= static_cast<double>(trials);
    cplx cov{0, 0};
    double va = 0.0, vb = 0.0;
    for (int t = 0; t < trials; ++t) {
      const cplx da = pair_a[static_cast<std::size_t>(t)] - ma;
      const cplx db = pair_b[static_cast<std::size_t>(t)] - mb;
      cov += da * std::conj(db);
      va += std::norm(da);
      vb += std::norm(db);
    }
    if (va > 0.0 && vb > 0.0) corr = std::abs(cov) / std::sqrt(va * vb);
  }

  ExperimentTable table;
  table.header = {{"experiment", "coeff_variance"},
                  {"base_seed", std::to_string(base_seed)},
                  {"version", kVersionTag},
                  {"sigma2", fmt_double(sigma2)},
                  {"independence_corr", fmt_double(corr)}};
  table.columns = {"a", "b", "var_emp", "var_expected", "ratio", "trials"};
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double var_emp = sigma2 > 0.0 ? complex_variance(coeffs[p]) : 0.0;
    const double ratio = sigma2 > 0.0 ? var_emp / sigma2 : 1.0;
    table.rows.push_back({points[p].a, points[p].b, var_emp, sigma2, ratio,
                          static_cast<double>(trials)});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Component test
// ---------------------------------------------------------------------------

namespace {

struct ConcentrationStats {
  double concentration = 0.0;  // fraction of b1 with argmax within 2 bins of oracle
  double spread = 0.0;         // circular spread of argmax locations (1 - resultant)
};

ConcentrationStats stacked_concentration(const TFDistribution& stacked) {
  const int nv = stacked.v_axes[0].bins();
  const int nb = stacked.b_shape[0];
  int hits = 0;
  std::complex<double> resultant{0.0, 0.0};
  int located = 0;
  for (int b = 0; b < nb; ++b) {
    double best = 0.0;
    int arg = -1;
    for (int v = 0; v < nv; ++v) {
      const double m = stacked.dense[static_cast<std::size_t>(v) * nb + b];
      if (m > best) {
        best = m;
        arg = v;
      }
    }
    if (arg < 0) continue;  // empty column: counts as a miss
    ++located;
    resultant += std::polar(1.0, kTwoPi * arg / nv);
    const double truth = oracle_wavevector(static_cast<double>(b) / nb, 0.0)[0];
    const int hot = stacked.v_axes[0].bin_of(truth);
    if (hot >= 0 && std::abs(arg - hot) <= 2) ++hits;
  }
  ConcentrationStats out;
  out.concentration = static_cast<double>(hits) / nb;
  out.spread = located > 0 ? 1.0 - std::abs(resultant) / located : 1.0;
  return out;
}

}  // namespace

ComponentTestResult component_test(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.sigma2_values.size() < 2)
    throw ParameterError("component test: needs two noise levels (e.g. 5 and 10)");
  const double sig_lo = plan.sigma2_values[0];
  const double sig_hi = plan.sigma2_values[1];
  const double s = effective_s(plan.s_values.front());
  const int red = plan.red_values.front();

  FrameSpec spec;
  spec.dim = 2;
  spec.s = s;
  spec.red = red;
  spec.band = plan.band2d;

  SqueezeConfig config;
  config.delta = plan.delta;
  config.threshold_mode = plan.threshold_mode;
  config.mode = SqueezeMode::kSelectiveMax;
  config.bin_width = plan.bin_width;

  ComponentTestResult result;
  result.concentration_sig.resize(static_cast<std::size_t>(plan.trials));
  result.concentration_sig2.resize(static_cast<std::size_t>(plan.trials));
  result.concentration_noise.resize(static_cast<std::size_t>(plan.trials));
  std::vector<double> spread_sig(static_cast<std::size_t>(plan.trials));
  std::vector<double> spread_sig2(static_cast<std::size_t>(plan.trials));
  std::vector<double> spread_noise(static_cast<std::size_t>(plan.trials));

  parallel_for(plan.trials, [&](std::int64_t t) {
    const Signal warped = gen_2d_warped(plan.fs2d);
    Signal silent = warped;
    for (auto& v : silent.samples) v = cplx{0.0, 0.0};
    silent.provenance.generator = "zero";

    auto run_case = [&](const Signal& base, double sigma2, std::uint64_t cell) {
      NoiseSpec noise;
      noise.sigma2 = sigma2;
      noise.seed = trial_seed(plan.base_seed, cell, static_cast<std::uint64_t>(t));
      const Signal g = add_noise(base, noise);
      FrameSpec fs = spec;
      fs.signal_shape = g.shape;
      const TFDistribution full = selective_max_sst(g, fs, config);
      return stacked_concentration(stack_2d(full, 0));
    };

    const ConcentrationStats a = run_case(warped, sig_lo, 10);
    const ConcentrationStats b = run_case(warped, sig_hi, 11);
    const ConcentrationStats c = run_case(silent, sig_lo, 12);
    result.concentration_sig[static_cast<std::size_t>(t)] = a.concentration;
    result.concentration_sig2[static_cast<std::size_t>(t)] = b.concentration;
    result.concentration_noise[static_cast<std::size_t>(t)] = c.concentration;
    spread_sig[static_cast<std::size_t>(t)] = a.spread;
    spread_sig2[static_cast<std::size_t>(t)] = b.spread;
    spread_noise[static_cast<std::size_t>(t)] = c.spread;
  });

  ExperimentTable table;
  table.header = base_header(plan, "component_test");
  table.header.emplace_back("fs2d", fmt_double(plan.fs2d));
  table.header.emplace_back("band", fmt_double(plan.band2d.lo) + ":" + fmt_double(plan.band2d.hi));
  table.header.emplace_back("s", fmt_double(s));
  table.header.emplace_back("red", std::to_string(red));
  table.columns = {"case", "sigma2", "conc_mean", "conc_std", "spread_mean", "trials", "seed"};

  auto add_row = [&](double case_id, double sigma2, const std::vector<double>& conc,
                     const std::vector<double>& spread) {
    const MeanStd mc = mean_std(conc);
    const MeanStd ms = mean_std(spread);
    table.rows.push_back({case_id, sigma2, mc.mean, mc.std, ms.mean,
                          static_cast<double>(plan.trials), static_cast<double>(plan.base_seed)});
  };
  add_row(1, sig_lo, result.concentration_sig, spread_sig);
  add_row(2, sig_hi, result.concentration_sig2, spread_sig2);
  add_row(3, sig_lo, result.concentration_noise, spread_noise);
  result.table = std::move(table);
  return result;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

ExperimentTable run_experiment(const ExperimentPlan& plan) {
  switch (plan.kind) {
    case ExperimentPlan::Kind::kEmdVsRed:
      return run_emd_vs_red(plan);
    case ExperimentPlan::Kind::kEmdVsNoise:
      return run_emd_vs_noise(plan);
    case ExperimentPlan::Kind::kProbEstimate:
      return run_prob_estimate(plan);
    case ExperimentPlan::Kind::kComponentTest:
      return component_test(plan).table;
    case ExperimentPlan::Kind::kCoeffVariance: {
      std::vector<VarianceProbePoint> points{{64.0, 0.25}, {128.0, 0.5}, {256.0, 0.75}, {400.0, 0.125}};
      return coeff_variance_check(plan.sigma2_values.front(), plan.trials, points, plan.base_seed,
                                  plan.fs, plan.s_values.front());
    }
  }
  throw ParameterError("unknown experiment kind");
}

}  // namespace synsq
