// synsq — command line front end for the synchrosqueezed wave packet library.
//
// Subcommands: synth | noise | sst | emd | experiment. Exit codes: 0 success,
// 1 parameter error, 2 input/format error, 3 internal invariant violation.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "synsq/errors.hpp"
#include "synsq/gridfile.hpp"
#include "synsq/metrics.hpp"
#include "synsq/signals.hpp"
#include "synsq/statlab.hpp"
#include "synsq/synchrosqueeze.hpp"
#include "synsq/version.hpp"
#include "synsq/wavepacket.hpp"

namespace {

using namespace synsq;
using nlohmann::json;

Band parse_band(const std::string& text) {
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(text.c_str(), "%lf:%lf", &lo, &hi) != 2)
    throw ParameterError("band must be given as lo:hi, e.g. 20:120");
  return Band{lo, hi};
}

ThresholdMode parse_threshold_mode(const std::string& text) {
  if (text == "R") return ThresholdMode::kR;
  if (text == "S") return ThresholdMode::kS;
  throw ParameterError("threshold mode must be R or S");
}

// --------------------------------------------------------------------------
// synth
// --------------------------------------------------------------------------

struct SynthArgs {
  std::string generator;
  double fs = 0.0;  // 0: generator default
  std::string out;
};

void run_synth(const SynthArgs& args) {
  Signal sig;
  if (args.generator == "chirp")
    sig = gen_single_chirp(args.fs > 0 ? args.fs : 1024);
  else if (args.generator == "benchmark")
    sig = gen_benchmark_1d(args.fs > 0 ? args.fs : 8192);
  else if (args.generator == "warped2d")
    sig = gen_2d_warped(args.fs > 0 ? args.fs : 512);
  else
    throw ParameterError("unknown generator '" + args.generator +
                         "' (expected chirp | benchmark | warped2d)");
  write_signal_grid(grid_stem(args.out), sig);
  std::cout << "wrote " << grid_stem(args.out) << ".{json,bin} (" << sig.shape[0];
  if (sig.dim == 2) std::cout << "x" << sig.shape[1];
  std::cout << " " << (sig.is_real ? "f64" : "c128") << ")\n";
}

// --------------------------------------------------------------------------
// noise
// --------------------------------------------------------------------------

struct NoiseArgs {
  std::string in, out;
  std::string kind = "gaussian";
  double sigma2 = 1.0;
  double alpha = 1.0, dispersion = 0.9, delta_loc = 1.0, target_linf = 15.0;
  std::uint64_t seed = 0;
  bool complex_circular = false;
};

void run_noise(const NoiseArgs& args) {
  const Signal input = read_signal_grid(grid_stem(args.in));

  NoiseSpec spec;
  if (args.kind == "gaussian")
    spec.kind = NoiseKind::kWhiteGaussian;
  else if (args.kind == "alpha-stable")
    spec.kind = NoiseKind::kAlphaStable;
  else
    throw ParameterError("noise kind must be gaussian | alpha-stable");
  spec.sigma2 = args.sigma2;
  spec.alpha = args.alpha;
  spec.dispersion = args.dispersion;
  spec.delta_loc = args.delta_loc;
  spec.target_linf = args.target_linf;
  spec.seed = args.seed;
  spec.complex_circular = args.complex_circular;

  double rescale = 1.0;
  const Signal noisy = add_noise(input, spec, &rescale);

  // Header extras: the realized SNR and (for alpha-stable) the rescale factor.
  Signal diff = noisy;
  for (std::size_t i = 0; i < diff.samples.size(); ++i) diff.samples[i] -= input.samples[i];
  const double snr = snr_db(input, diff);

  json extras;
  extras["noise_kind"] = args.kind;
  if (std::isfinite(snr)) extras["snr_db"] = snr;
  if (spec.kind == NoiseKind::kAlphaStable) extras["rescale_factor"] = rescale;
  write_signal_grid(grid_stem(args.out), noisy, extras);
  std::cout << "wrote " << grid_stem(args.out) << ".{json,bin}";
  if (std::isfinite(snr)) std::cout << " snr_db=" << snr;
  std::cout << "\n";
}

// --------------------------------------------------------------------------
// sst
// --------------------------------------------------------------------------

struct SstArgs {
  std::string in, out;
  double s = 0.75;
  int red = 1;
  double delta = 1e-2;
  std::string band;
  std::string mode = "full";
  std::string threshold_mode = "R";
  double vbin = 1.0;
  double vmin = -1.0, vmax = -1.0;  // <0: derive from band
  int stack_x2 = 0;
};

void run_sst(const SstArgs& args) {
  Signal sig = read_signal_grid(grid_stem(args.in));

  FrameSpec spec;
  spec.dim = sig.dim;
  spec.s = args.s;
  spec.red = args.red;
  spec.signal_shape = sig.shape;
  if (!args.band.empty()) spec.band = parse_band(args.band);

  SqueezeConfig config;
  config.delta = args.delta;
  config.threshold_mode = parse_threshold_mode(args.threshold_mode);
  config.bin_width = args.vbin;
  if (args.vmin >= 0.0 && args.vmax > args.vmin)
    config.v_axis0 = VAxis{args.vmin, args.vmax, args.vbin};
  if (args.mode == "selective-max")
    config.mode = SqueezeMode::kSelectiveMax;
  else if (args.mode != "full")
    throw ParameterError("mode must be full | selective-max");
  if (sig.dim == 2) config.stack_x2 = args.stack_x2;

  const TFDistribution t = config.mode == SqueezeMode::kSelectiveMax
                               ? selective_max_sst(sig, spec, config)
                               : redundant_sst(sig, spec, config);

  json extras;
  extras["input"] = grid_stem(args.in);
  write_tfdist_grid(grid_stem(args.out), t, extras);
  std::cout << "wrote " << grid_stem(args.out) << ".{json,bin}\n";
  std::cout << "dropped=" << t.meta.dropped << " retained_energy=" << t.meta.reassigned_energy
            << "\n";
}

// --------------------------------------------------------------------------
// emd
// --------------------------------------------------------------------------

struct EmdArgs {
  std::string in;
  std::string oracle = "chirp";
  std::string out;
};

void run_emd(const EmdArgs& args) {
  const TFDistribution t = read_tfdist_grid(grid_stem(args.in));

  std::function<double(double)> oracle;
  if (args.oracle == "warped2d:v1")
    oracle = [](double x) { return oracle_wavevector(x, 0.0)[0]; };
  else
    oracle = [&](double x) { return oracle_if(args.oracle, x); };
  oracle(0.0);  // validate the id before building the grid

  const IdealDistribution ideal = ideal_distribution(oracle, t.v_axes[0], t.b_shape[0]);
  const EmdResult res = emd_score(t, ideal);
  std::cout << "emd_hz=" << res.value << " slices_used=" << res.used
            << " slices_skipped=" << res.skipped << "\n";

  if (!args.out.empty()) {
    ExperimentTable table;
    table.header = {{"experiment", "emd"},
                    {"version", kVersionTag},
                    {"input", grid_stem(args.in)},
                    {"oracle", args.oracle}};
    table.columns = {"s", "red", "emd_hz", "slices_used", "slices_skipped"};
    table.rows.push_back({t.meta.s, static_cast<double>(t.meta.red), res.value,
                          static_cast<double>(res.used), static_cast<double>(res.skipped)});
    write_table_csv(args.out, table);
    std::cout << "wrote " << args.out << "\n";
  }
}

// --------------------------------------------------------------------------
// experiment
// --------------------------------------------------------------------------

struct ExperimentArgs {
  std::string kind = "emd_vs_red";
  ExperimentPlan plan;
  std::string band, band2d;
  std::string threshold_mode = "R";
  std::string out;
};

void run_experiment_cmd(ExperimentArgs& args) {
  if (args.kind == "emd_vs_red")
    args.plan.kind = ExperimentPlan::Kind::kEmdVsRed;
  else if (args.kind == "emd_vs_noise")
    args.plan.kind = ExperimentPlan::Kind::kEmdVsNoise;
  else if (args.kind == "prob_estimate")
    args.plan.kind = ExperimentPlan::Kind::kProbEstimate;
  else if (args.kind == "component_test")
    args.plan.kind = ExperimentPlan::Kind::kComponentTest;
  else if (args.kind == "coeff_variance")
    args.plan.kind = ExperimentPlan::Kind::kCoeffVariance;
  else
    throw ParameterError("unknown experiment kind '" + args.kind + "'");

  if (!args.band.empty()) args.plan.band = parse_band(args.band);
  if (!args.band2d.empty()) args.plan.band2d = parse_band(args.band2d);
  args.plan.threshold_mode = parse_threshold_mode(args.threshold_mode);

  const ExperimentTable table = run_experiment(args.plan);
  write_table_csv(args.out, table);
  std::cout << "wrote " << args.out << " (" << table.rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersionTag) + " - synchrosqueezed wave packet transforms"};
  app.set_config("--config", "", "read options from a TOML-style config file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a benchmark signal grid");
  cmd_synth->add_option("generator", synth.generator, "chirp | benchmark | warped2d")->required();
  cmd_synth->add_option("--fs", synth.fs, "sampling rate in Hz (0: generator default)");
  cmd_synth->add_option("--out", synth.out, "output grid stem")->required();

  NoiseArgs noise;
  auto* cmd_noise = app.add_subcommand("noise", "add seeded noise to a signal grid");
  cmd_noise->add_option("--in", noise.in, "input signal grid")->required();
  cmd_noise->add_option("--out", noise.out, "output grid stem")->required();
  cmd_noise->add_option("--kind", noise.kind, "gaussian | alpha-stable");
  cmd_noise->add_option("--sigma2", noise.sigma2, "gaussian variance per sample");
  cmd_noise->add_option("--alpha", noise.alpha, "alpha-stable stability parameter in (0,2]");
  cmd_noise->add_option("--dispersion", noise.dispersion, "alpha-stable dispersion");
  cmd_noise->add_option("--delta-loc", noise.delta_loc, "alpha-stable location");
  cmd_noise->add_option("--target-linf", noise.target_linf, "alpha-stable rescale target");
  cmd_noise->add_option("--seed", noise.seed, "RNG seed");
  cmd_noise->add_flag("--complex-circular", noise.complex_circular,
                      "draw circularly symmetric complex gaussian noise");

  SstArgs sst;
  auto* cmd_sst = app.add_subcommand("sst", "synchrosqueezed wave packet transform");
  cmd_sst->add_option("--in", sst.in, "input signal grid")->required();
  cmd_sst->add_option("--out", sst.out, "output distribution stem")->required();
  cmd_sst->add_option("--s", sst.s, "geometric scaling parameter in (1/2,1)");
  cmd_sst->add_option("--red", sst.red, "number of frames to average");
  cmd_sst->add_option("--delta", sst.delta, "coefficient threshold");
  cmd_sst->add_option("--band", sst.band, "analyzed band lo:hi in Hz");
  cmd_sst->add_option("--mode", sst.mode, "full | selective-max");
  cmd_sst->add_option("--threshold-mode", sst.threshold_mode, "R | S");
  cmd_sst->add_option("--vbin", sst.vbin, "v grid bin width in Hz");
  cmd_sst->add_option("--vmin", sst.vmin, "v grid lower edge (default: band)");
  cmd_sst->add_option("--vmax", sst.vmax, "v grid upper edge (default: band)");
  cmd_sst->add_option("--stack-x2", sst.stack_x2, "2D: x2 lattice index of the stacked view");

  EmdArgs emd;
  auto* cmd_emd = app.add_subcommand("emd", "EMD of a distribution against an ideal ridge");
  cmd_emd->add_option("--in", emd.in, "distribution grid")->required();
  cmd_emd->add_option("--oracle", emd.oracle,
                      "chirp | benchmark:fK | warped2d:v1 (ideal IF oracle)");
  cmd_emd->add_option("--out", emd.out, "optional CSV output path");

  ExperimentArgs exp;
  auto* cmd_exp = app.add_subcommand("experiment", "seeded Monte-Carlo experiment");
  cmd_exp->add_option("--kind", exp.kind,
                      "emd_vs_red | emd_vs_noise | prob_estimate | component_test | coeff_variance");
  cmd_exp->add_option("--out", exp.out, "output CSV path")->required();
  cmd_exp->add_option("--red", exp.plan.red_values, "redundancy axis");
  cmd_exp->add_option("--s", exp.plan.s_values, "scaling parameter axis");
  cmd_exp->add_option("--sigma2", exp.plan.sigma2_values, "noise variance axis");
  cmd_exp->add_option("--n", exp.plan.n_values, "frequency scale axis");
  cmd_exp->add_option("--trials", exp.plan.trials, "trials per cell");
  cmd_exp->add_option("--seed", exp.plan.base_seed, "base seed");
  cmd_exp->add_option("--fs", exp.plan.fs, "1D experiment sampling rate");
  cmd_exp->add_option("--fs2d", exp.plan.fs2d, "component-test sampling rate");
  cmd_exp->add_option("--band", exp.band, "1D experiment band lo:hi");
  cmd_exp->add_option("--band2d", exp.band2d, "component-test band lo:hi");
  cmd_exp->add_option("--vbin", exp.plan.bin_width, "v grid bin width");
  cmd_exp->add_option("--delta", exp.plan.delta, "coefficient threshold");
  cmd_exp->add_option("--threshold-mode", exp.threshold_mode, "R | S");
  cmd_exp->add_option("--tol", exp.plan.tol_factor, "relative IF error tolerance");
  cmd_exp->add_option("--probe-sigmas", exp.plan.probe_threshold_sigmas,
                      "probability-probe threshold in noise sigmas");

  try {
    app.parse(argc, argv);
    if (cmd_synth->parsed()) run_synth(synth);
    if (cmd_noise->parsed()) run_noise(noise);
    if (cmd_sst->parsed()) run_sst(sst);
    if (cmd_emd->parsed()) run_emd(emd);
    if (cmd_exp->parsed()) run_experiment_cmd(exp);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // parameter errors -> 1; --help -> 0
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
