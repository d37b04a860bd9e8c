// Copyright 2026 The obdestripe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "config.hpp"
#include "obds/obds.hpp"

namespace obds::cli {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v, int precision = 4) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// Round-trippable text for metadata.
std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string offset_text(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Image clip_unit(Image img) {
  for (double& v : img.pixels()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

// Options shared by orient and destripe.
struct OrientFlags {
  std::optional<long> r;
  std::optional<long> gf_radius;
  std::optional<double> gf_eps;
  std::optional<double> gf_t;

  void add_to(CLI::App& app) {
    app.add_option("--r", r, "Template radius for candidate offsets (default 9)");
    app.add_option("--gf-radius", gf_radius, "Guided filter window half-width (default 1)");
    app.add_option("--gf-eps", gf_eps, "Guided filter regularization (default 0.01)");
    app.add_option("--gf-t", gf_t, "Detail enhancement factor (default 5)");
  }

  GuidedFilterParams filter(const Config& cfg) const {
    GuidedFilterParams gf;
    gf.radius = static_cast<int>(resolve(gf_radius, cfg, "gf_radius", gf.radius));
    gf.eps = resolve(gf_eps, cfg, "gf_eps", gf.eps);
    gf.t = resolve(gf_t, cfg, "gf_t", gf.t);
    gf.validate();
    return gf;
  }

  int radius(const Config& cfg) const {
    const long v = resolve(r, cfg, "r", kDefaultTemplateRadius);
    if (v < 1 || v > 64) throw InvalidInput("template radius must lie in [1, 64]");
    return static_cast<int>(v);
  }
};

Config load_config(const std::string& path, const std::set<std::string>& keys) {
  if (path.empty()) return {};
  Config cfg = Config::load(path);
  cfg.require_known(keys);
  return cfg;
}

void write_spectrum(const fs::path& path, const Image& e) {
  Fft2d fft(e.rows(), e.cols());
  const auto spec = fft.forward(e);
  Image mag(e.rows(), e.cols());
  // Centre the zero frequency for viewing.
  for (std::size_t u = 0; u < e.rows(); ++u)
    for (std::size_t v = 0; v < e.cols(); ++v)
      mag((u + e.rows() / 2) % e.rows(), (v + e.cols() / 2) % e.cols()) =
          std::log1p(std::abs(spec[u * e.cols() + v]));
  mag(e.rows() / 2, e.cols() / 2) = 0.0;
  write_image(path, normalize(mag), 16);
}

// ---- orient ---------------------------------------------------------------

struct OrientCmd {
  std::string input;
  std::string config;
  std::string spectrum;
  OrientFlags flags;

  void attach(CLI::App& app) {
    app.add_option("input", input, "Input image (.png, .pgm or .obds)")->required();
    app.add_option("--config", config, "key = value file (keys: r, gf_radius, gf_eps, gf_t)");
    app.add_option("--spectrum", spectrum, "Write the log-magnitude spectrum of the detail layer");
    flags.add_to(app);
  }

  int operator()(std::ostream& out) const {
    const Config cfg = load_config(config, {"r", "gf_radius", "gf_eps", "gf_t"});
    const GuidedFilterParams gf = flags.filter(cfg);
    const Image y = read_image(input);
    if (!spectrum.empty()) write_spectrum(spectrum, background_eliminate(y, gf));
    const OrientationResult res = estimate_orientation(y, gf, flags.radius(cfg));
    out << "theta_stripe=" << fmt(res.theta_stripe_deg, 2) << "\n"
        << "theta_hat=" << fmt(res.chosen.theta_deg, 2) << "\n"
        << "offset=" << offset_text(res.chosen.a, res.chosen.b) << "\n"
        << "dominant_frequency=" << offset_text(res.dominant_freq.du, res.dominant_freq.dv)
        << "\n";
    return kExitOk;
  }
};

// ---- destripe -------------------------------------------------------------

struct DestripeCmd {
  std::string input;
  std::string output;
  std::string stripes;
  std::string trace;
  std::string config;
  bool normalize_input = false;
  std::optional<double> theta;
  std::optional<double> lambda1, lambda2, rho1, rho2, rho3, eps_stop;
  std::optional<long> max_iter;
  OrientFlags flags;

  void attach(CLI::App& app) {
    app.add_option("input", input, "Striped image (.png, .pgm or .obds)")->required();
    app.add_option("-o,--output", output, "Destriped image X, clipped to [0,1]")->required();
    app.add_option("--stripes", stripes,
                   "Stripe image S (default <output stem>_stripes<ext>; offset-encoded "
                   "as (S+1)/2 in integer formats)");
    app.add_option("--trace", trace, "Iteration trace CSV (default <output stem>_trace.csv)");
    app.add_option("--config", config, "key = value file with any of the numeric options");
    app.add_option("--theta", theta, "Stripe angle in degrees; skips orientation estimation");
    app.add_option("--lambda1", lambda1, "Oriented-variation weight (default 2)");
    app.add_option("--lambda2", lambda2, "Fidelity l1 weight (default 0.005)");
    app.add_option("--rho1", rho1, "TV penalty (default 5)");
    app.add_option("--rho2", rho2, "Oriented-variation penalty (default 5)");
    app.add_option("--rho3", rho3, "Fidelity penalty (default 5)");
    app.add_option("--eps-stop", eps_stop, "Relative-change tolerance (default 1e-5)");
    app.add_option("--max-iter", max_iter, "Iteration cap (default 200)");
    app.add_flag("--normalize", normalize_input, "Min-max normalize the input first");
    flags.add_to(app);
  }

  int operator()(std::ostream& out, std::ostream& err, bool verbose) const {
    const Config cfg =
        load_config(config, {"theta", "lambda1", "lambda2", "rho1", "rho2", "rho3", "eps_stop",
                             "max_iter", "r", "gf_radius", "gf_eps", "gf_t"});
    SolverParams p;
    p.lambda1 = resolve(lambda1, cfg, "lambda1", p.lambda1);
    p.lambda2 = resolve(lambda2, cfg, "lambda2", p.lambda2);
    p.rho1 = resolve(rho1, cfg, "rho1", p.rho1);
    p.rho2 = resolve(rho2, cfg, "rho2", p.rho2);
    p.rho3 = resolve(rho3, cfg, "rho3", p.rho3);
    p.eps_stop = resolve(eps_stop, cfg, "eps_stop", p.eps_stop);
    const long n_max = resolve(max_iter, cfg, "max_iter", p.n_max);
    if (n_max < 1 || n_max > 1000000) throw InvalidInput("max_iter must lie in [1, 1000000]");
    p.n_max = static_cast<int>(n_max);
    const int r = flags.radius(cfg);
    const GuidedFilterParams gf = flags.filter(cfg);
    const std::optional<double> theta_override = resolve_optional(theta, cfg, "theta");

    Image y = read_image(input);
    if (normalize_input) y = normalize(y);

    const auto t0 = std::chrono::steady_clock::now();
    if (theta_override) {
      p.direction = select_candidate(*theta_override, enumerate_candidates(r));
      out << "theta_stripe=" << fmt(*theta_override, 2) << " (override)\n";
    } else {
      const OrientationResult o = estimate_orientation(y, gf, r);
      p.direction = o.chosen;
      out << "theta_stripe=" << fmt(o.theta_stripe_deg, 2) << "\n";
    }
    out << "theta_hat=" << fmt(p.direction.theta_deg, 2) << "\n"
        << "offset=" << offset_text(p.direction.a, p.direction.b) << "\n";

    const DestripeResult res = destripe(y, p);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path out_path(output);
    const fs::path stem = out_path.parent_path() / out_path.stem();
    const fs::path s_path =
        stripes.empty() ? fs::path(stem.string() + "_stripes" + out_path.extension().string())
                        : fs::path(stripes);
    const fs::path t_path = trace.empty() ? fs::path(stem.string() + "_trace.csv") : fs::path(trace);

    write_image(out_path, clip_unit(res.x));
    write_image(s_path, format_from_path(s_path) == ImageFormat::raw_float ? res.s
                                                                           : offset_encode(res.s));
    std::ofstream csv(t_path);
    if (!csv) throw IoError("cannot create " + t_path.string());
    write_trace_csv(csv, res.trace);
    if (!csv) throw IoError("write failed: " + t_path.string());

    out << "iterations=" << res.trace.size() << "\n"
        << "rel_change=" << fmt(res.trace.back().rel_change, 9) << "\n"
        << "converged=" << (res.converged ? "yes" : "no") << "\n";
    if (verbose) err << "destripe: " << fmt(seconds, 3) << " s\n";
    return kExitOk;
  }
};

// ---- simulate -------------------------------------------------------------

struct SimulateCmd {
  std::string base;
  std::string outdir;
  std::string prefix = "sim";
  std::string format = "png";
  std::string config;
  std::optional<std::string> kind, axis;
  std::optional<double> amplitude, coverage, angle, angle_min, angle_max, noise;
  std::optional<long> period, seed, count, crop;

  void attach(CLI::App& app) {
    app.add_option("base", base, "Base image path or builtin name (smoothN, regionsN, mixedN, terrainN)")
        ->required();
    app.add_option("-o,--outdir", outdir, "Output directory")->required();
    app.add_option("--prefix", prefix, "File name prefix (default sim)");
    app.add_option("--format", format, "png, pgm or obds (default png)")
        ->check(CLI::IsMember({"png", "pgm", "obds"}));
    app.add_option("--config", config, "key = value file with any of the stripe options");
    app.add_option("--kind", kind, "random or periodic (default random)");
    app.add_option("--axis", axis, "vertical or horizontal lines before rotation (default vertical)");
    app.add_option("--amplitude", amplitude, "Stripe amplitude (default 0.1)");
    app.add_option("--period", period, "Periodic pattern length in lines (default 6)");
    app.add_option("--coverage", coverage, "Fraction of striped lines, random kind (default 0.8)");
    app.add_option("--seed", seed, "Random seed (default 0)");
    app.add_option("--angle", angle, "Single rotation angle in degrees");
    app.add_option("--count", count, "Number of random angles (default 1)");
    app.add_option("--angle-min", angle_min, "Lower bound for random angles (default 0)");
    app.add_option("--angle-max", angle_max, "Upper bound, exclusive (default 45)");
    app.add_option("--crop", crop, "Centre crop size N (N x N) after rotation");
    app.add_option("--noise", noise, "Gaussian noise sigma added to the observation (default 0)");
  }

  int operator()(std::ostream& out) const {
    const Config cfg = load_config(
        config, {"kind", "axis", "amplitude", "period", "coverage", "seed", "angle", "count",
                 "angle_min", "angle_max", "crop", "noise"});
    StripeSpec spec;
    const std::string kind_s = resolve(kind, cfg, "kind", "random");
    const std::string axis_s = resolve(axis, cfg, "axis", "vertical");
    if (kind_s != "random" && kind_s != "periodic") throw InvalidInput("kind must be random or periodic");
    if (axis_s != "vertical" && axis_s != "horizontal")
      throw InvalidInput("axis must be vertical or horizontal");
    spec.kind = kind_s == "random" ? StripeKind::random : StripeKind::periodic;
    spec.axis = axis_s == "vertical" ? StripeAxis::vertical : StripeAxis::horizontal;
    spec.amplitude = resolve(amplitude, cfg, "amplitude", spec.amplitude);
    spec.period = static_cast<int>(resolve(period, cfg, "period", spec.period));
    spec.coverage = resolve(coverage, cfg, "coverage", spec.coverage);
    const long seed_v = resolve(seed, cfg, "seed", 0L);
    if (seed_v < 0) throw InvalidInput("seed must be >= 0");
    spec.seed = static_cast<std::uint64_t>(seed_v);
    spec.validate();
    const double sigma = resolve(noise, cfg, "noise", 0.0);
    if (!(sigma >= 0.0)) throw InvalidInput("noise must be >= 0");
    const long crop_v = resolve(crop, cfg, "crop", 0L);
    if (crop_v < 0) throw InvalidInput("crop must be >= 0");

    std::vector<double> angles;
    if (const auto single = resolve_optional(angle, cfg, "angle")) {
      if (count || cfg.get("count")) throw InvalidInput("--angle and --count are exclusive");
      angles.push_back(*single);
    } else {
      const long n = resolve(count, cfg, "count", 1L);
      if (n < 1 || n > 10000) throw InvalidInput("count must lie in [1, 10000]");
      angles = random_angles(static_cast<std::size_t>(n), resolve(angle_min, cfg, "angle_min", 0.0),
                             resolve(angle_max, cfg, "angle_max", 45.0), spec.seed);
    }

    const Image clean = is_builtin_base(base) ? builtin_base(base, spec.seed) : read_image(base);
    require_finite(clean, "base image");
    const StripedImage striped = add_stripes(clean, spec);

    fs::create_directories(outdir);
    for (std::size_t k = 0; k < angles.size(); ++k) {
      ObliquePair pair = make_oblique(striped.degraded, clean, angles[k]);
      if (crop_v > 0) {
        const auto n = static_cast<std::size_t>(crop_v);
        pair.y = center_crop(pair.y, n, n);
        pair.x_truth = center_crop(pair.x_truth, n, n);
      }
      if (sigma > 0.0) pair.y = add_gaussian_noise(pair.y, sigma, spec.seed * 1000003 + k);

      char index[24];
      std::snprintf(index, sizeof index, "%02zu", k);
      const std::string name = prefix + "_" + index;
      const fs::path y_path = fs::path(outdir) / (name + "_y." + format);
      const fs::path x_path = fs::path(outdir) / (name + "_truth." + format);
      write_image(y_path, pair.y);
      write_image(x_path, pair.x_truth);

      const double theta = std::fmod(
          angles[k] + (spec.axis == StripeAxis::horizontal ? 90.0 : 0.0) + 360.0 * 4, 180.0);
      write_metadata(fs::path(outdir) / (name + ".meta"),
                     {{"base", base},
                      {"seed", std::to_string(spec.seed)},
                      {"index", std::to_string(k)},
                      {"angle_deg", exact(angles[k])},
                      {"theta_stripe_deg", exact(theta)},
                      {"kind", kind_s},
                      {"axis", axis_s},
                      {"amplitude", exact(spec.amplitude)},
                      {"period", std::to_string(spec.period)},
                      {"coverage", exact(spec.coverage)},
                      {"noise_sigma", exact(sigma)},
                      {"rows", std::to_string(pair.y.rows())},
                      {"cols", std::to_string(pair.y.cols())},
                      {"observation", y_path.filename().string()},
                      {"truth", x_path.filename().string()}});
      out << name << " angle=" << fmt(angles[k], 2) << " theta_stripe=" << fmt(theta, 2) << " size="
          << pair.y.rows() << "x" << pair.y.cols() << "\n";
    }
    return kExitOk;
  }
};

// ---- evaluate -------------------------------------------------------------

struct EvaluateCmd {
  std::string result;
  std::string truth;
  std::string windows;
  std::string noisy;
  std::string csv;

  void attach(CLI::App& app) {
    app.add_option("result", result, "Destriped image")->required();
    app.add_option("--truth", truth, "Clean reference for MAE, PSNR, SSIM");
    app.add_option("--windows", windows, "Sample-window file for ICV and MRD");
    app.add_option("--noisy", noisy, "Striped observation; needed for MRD, adds ICV before/after");
    app.add_option("--csv", csv, "Write metric,window,value,note rows");
  }

  int operator()(std::ostream& out) const {
    if (truth.empty() && windows.empty())
      throw CLI::ValidationError("evaluate", "need --truth and/or --windows");
    if (!noisy.empty() && windows.empty())
      throw CLI::ValidationError("evaluate", "--noisy is only used with --windows");

    const Image x = read_image(result);
    std::vector<std::array<std::string, 4>> rows;

    if (!truth.empty()) {
      const Image ref = read_image(truth);
      require_same_shape(x, ref, "evaluate");
      const double m = mae(x, ref) * 100.0;
      const double p = psnr(x, ref);
      const double s = ssim(x, ref);
      out << "MAE(E-2) PSNR SSIM\n" << fmt(m) << " " << fmt(p) << " " << fmt(s) << "\n";
      rows.push_back({"mae_e2", "", fmt(m, 6), ""});
      rows.push_back({"psnr", "", fmt(p, 6), ""});
      rows.push_back({"ssim", "", fmt(s, 6), ""});
    }

    if (!windows.empty()) {
      const SampleWindows all = read_windows(windows);
      check_windows(all, x);
      SampleWindows icv_w, mrd_w;
      for (const auto& w : all)
        (w.tag == WindowTag::striped_homogeneous ? icv_w : mrd_w).push_back(w);
      if (!mrd_w.empty() && noisy.empty())
        throw CLI::ValidationError("evaluate", "noise-free windows need --noisy for MRD");
      if (icv_w.empty() && mrd_w.empty()) throw InvalidInput("windows file lists no windows");
      std::optional<Image> y;
      if (!noisy.empty()) {
        y = read_image(noisy);
        require_same_shape(x, *y, "evaluate");
      }
      if (!icv_w.empty()) {
        const auto after = icv(x, icv_w);
        const auto before = y ? icv(*y, icv_w) : std::vector<IcvValue>{};
        for (std::size_t k = 0; k < after.size(); ++k) {
          const auto& w = icv_w[k];
          const std::string where = std::to_string(w.row0) + ":" + std::to_string(w.col0) + ":" +
                                    std::to_string(w.height) + "x" + std::to_string(w.width);
          out << "ICV[" << k << "] " << where;
          if (y) out << " before=" << fmt(before[k].value) << (before[k].zero_std ? " (zero std)" : "");
          out << " after=" << fmt(after[k].value) << (after[k].zero_std ? " (zero std)" : "") << "\n";
          if (y) rows.push_back({"icv_before", where, fmt(before[k].value, 6), before[k].zero_std ? "zero_std" : ""});
          rows.push_back({"icv", where, fmt(after[k].value, 6), after[k].zero_std ? "zero_std" : ""});
        }
      }
      if (!mrd_w.empty()) {
        const MrdReport r = mrd(*y, x, mrd_w);
        out << "MRD=" << fmt(r.value) << " pixels=" << r.pixels_used
            << " excluded=" << r.pixels_excluded << "\n";
        rows.push_back({"mrd", "", fmt(r.value, 6), "excluded=" + std::to_string(r.pixels_excluded)});
      }
    }

    if (!csv.empty()) {
      std::ofstream f(csv);
      if (!f) throw IoError("cannot create " + csv);
      f << "metric,window,value,note\n";
      for (const auto& r : rows) f << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
      if (!f) throw IoError("write failed: " + csv);
    }
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oblique stripe removal via oriented variation", "obdestripe"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Report timings on stderr");

  OrientCmd orient;
  DestripeCmd destripe_cmd;
  SimulateCmd simulate;
  EvaluateCmd evaluate;
  auto* orient_app = app.add_subcommand("orient", "Estimate the stripe orientation");
  auto* destripe_app = app.add_subcommand("destripe", "Remove oblique stripes");
  auto* simulate_app = app.add_subcommand("simulate", "Generate oblique-stripe test pairs");
  auto* evaluate_app = app.add_subcommand("evaluate", "Compute quality indices");
  orient.attach(*orient_app);
  destripe_cmd.attach(*destripe_app);
  simulate.attach(*simulate_app);
  evaluate.attach(*evaluate_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (orient_app->parsed()) return orient(out);
    if (destripe_app->parsed()) return destripe_cmd(out, err, verbose);
    if (simulate_app->parsed()) return simulate(out);
    return evaluate(out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const OrientationUndeterminable& e) {
    err << "orientation undeterminable: " << e.what() << "\n";
    return kExitUndeterminable;
  } catch (const SolverDiverged& e) {
    err << "solver diverged: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace obds::cli
