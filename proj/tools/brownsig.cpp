#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "brownsig/brown.hpp"
#include "brownsig/characteristics.hpp"
#include "brownsig/error.hpp"
#include "brownsig/export.hpp"
#include "brownsig/io.hpp"
#include "brownsig/jn.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/rmt.hpp"
#include "brownsig/verify.hpp"

namespace fs = std::filesystem;
using namespace brownsig;

namespace {

struct Args {
  std::string measure_path;
  std::string preset;
  double t = 1.0;
  int grid = 1024;
  std::string out = ".";
  bool svg = false;
  std::uint64_t seed = 1;
  int n = 2000;
  int reps = 5;
  double dilation = 0.05;
  double tol = 1e-10;
  double limit_scale = 1.0;
};

struct Loaded {
  MeasureSpec spec;
  Measure mu;
  SummaryInfo info;
};

Loaded load(const Args& a) {
  if (a.measure_path.empty() == a.preset.empty()) fail(Errc::InvalidInput, "give exactly one of --measure or --preset");
  MeasureSpec spec = a.measure_path.empty() ? parse_preset(a.preset) : load_measure_file(a.measure_path);
  quad::Tolerance tol;
  if (!(a.tol > 0.0)) fail(Errc::InvalidInput, "--tol must be positive");
  tol.rel = a.tol;
  Measure mu = validate(spec, tol);
  require_time(a.t);
  SummaryInfo info{a.measure_path.empty() ? a.preset : fs::path(a.measure_path).filename().string(),
                   measure_digest(spec), 0.0};
  return {std::move(spec), std::move(mu), std::move(info)};
}

std::ofstream open_out(const Args& a, const std::string& name) {
  fs::create_directories(a.out);
  const fs::path p = fs::path(a.out) / name;
  std::ofstream os(p);
  if (!os) fail(Errc::InvalidInput, "cannot write " + p.string());
  std::cerr << "wrote " << p.string() << '\n';
  return os;
}

int cmd_compute(const Args& a) {
  Loaded L = load(a);
  const BrownDomain dom(L.mu, a.t);
  const BrownProfile prof = dom.profile(a.grid);
  L.info.max_height = dom.max_height();
  {
    auto os = open_out(a, "profile.csv");
    write_profile_csv(os, prof);
  }
  const std::string summary = summary_json(prof, L.info);
  open_out(a, "summary.json") << summary;
  if (a.svg) open_out(a, "figure.svg") << render_svg(prof, L.info);
  std::cout << summary;
  return 0;
}

int cmd_pushforward(const Args& a) {
  Loaded L = load(a);
  const BrownDomain dom(L.mu, a.t);
  const BrownProfile prof = dom.profile(a.grid);
  {
    auto os = open_out(a, "law_additive.csv");
    write_law_csv(os, law_additive(prof));
  }
  {
    // Lambda_t boundary, circular density, and its U_t image on the Omega_t boundary
    auto os = open_out(a, "correspondence.csv");
    os << "a0,v_t,rho_t,a,b_t,q\n";
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const double v = 0.5 * prof.halfheight[i];
      double rho = 0.0;
      try {
        rho = circular_density(dom, {prof.a0[i], 0.0});
      } catch (const Error&) {
        continue;  // grid point sits on the Lambda_t boundary to rounding
      }
      os << fmt(prof.a0[i]) << ',' << fmt(v) << ',' << fmt(rho) << ',' << fmt(prof.a[i]) << ','
         << fmt(prof.halfheight[i]) << ',' << fmt(2.0 * prof.a0[i] - prof.a[i]) << '\n';
    }
  }
  const PushforwardReport rep = pushforward_check(dom, 12, a.seed);
  std::string js = "{\"schema\":1,\"t\":" + fmt(a.t) + ",\"digest\":\"" + L.info.digest +
                   "\",\"mass\":" + fmt(prof.mass) + ",\"rectangles\":" + std::to_string(rep.rectangles.size()) +
                   ",\"max_discrepancy\":" + fmt(rep.max_discrepancy) + "}\n";
  open_out(a, "pushforward.json") << js;
  std::cout << js;
  return 0;
}

int cmd_simulate(const Args& a) {
  Loaded L = load(a);
  SimConfig cfg{a.n, a.t, a.reps, a.seed, a.dilation};
  const EigenCloud cloud = simulate(L.mu, cfg);
  const BrownDomain dom(L.mu, a.t);
  const BrownProfile prof = dom.profile(a.grid);
  const CompareReport rep = compare(cloud, prof);
  {
    auto os = open_out(a, "cloud.csv");
    write_cloud_csv(os, cloud);
  }
  std::string js = "{\"schema\":1,\"t\":" + fmt(a.t) + ",\"digest\":\"" + L.info.digest +
                   "\",\"n\":" + std::to_string(a.n) + ",\"reps\":" + std::to_string(a.reps) +
                   ",\"seed\":" + std::to_string(a.seed) + ",\"dilation\":" + fmt(a.dilation) +
                   ",\"count\":" + std::to_string(rep.count) + ",\"inside_fraction\":" + fmt(rep.inside_fraction) +
                   ",\"marginal_sup\":" + fmt(rep.marginal_sup) + ",\"pushed_sup\":" + fmt(rep.pushed_sup) + "}\n";
  open_out(a, "compare.json") << js;
  if (a.svg) {
    L.info.max_height = dom.max_height();
    open_out(a, "figure.svg") << render_svg(prof, L.info, cloud.points);
  }
  std::cout << js;
  return 0;
}

int cmd_jn(const Args& a) {
  Loaded L = load(a);
  const BrownDomain dom(L.mu, a.t);
  auto os = open_out(a, "jn.csv");
  os << "a,jn_density,w_t,shift_gap\n";
  double worst_w = 0.0, worst_s = 0.0;
  for (const Interval& om : dom.omega()) {
    const double lo = om.lo + 0.01 * om.length(), hi = om.hi - 0.01 * om.length();
    std::optional<std::complex<double>> seed;
    for (int k = 0; k < a.grid; ++k) {
      const double x = lo + (hi - lo) * k / std::max(a.grid - 1, 1);
      const auto g = solve_g(L.mu, a.t, x, seed);
      seed = g;
      const double jn = jn_density(L.mu, a.t, x, {}, g);
      const double w = dom.w_t(x);
      const double gap = a.t * g.real() - (dom.a0_of_a(x) - x);
      worst_w = std::max(worst_w, std::abs(jn - w));
      worst_s = std::max(worst_s, std::abs(gap));
      os << fmt(x) << ',' << fmt(jn) << ',' << fmt(w) << ',' << fmt(gap) << '\n';
    }
  }
  std::cout << "max |jn - w_t| = " << fmt(worst_w) << "\nmax |t Re g - (a0 - a)| = " << fmt(worst_s) << '\n';
  return 0;
}

int cmd_characteristics(const Args& a) {
  Loaded L = load(a);
  const int points = a.n == 2000 ? 20 : a.n;  // --n defaults to the matrix size
  std::mt19937_64 rng(a.seed);
  const Support s = L.mu.support();
  std::uniform_real_distribution<double> ua(s.m - 2.0, s.M + 2.0), ub(-2.0, 2.0), ue(0.1, 1.0);
  auto os = open_out(a, "characteristics.csv");
  os << "a,b,eps,s,residual\n";
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const std::complex<double> lambda(ua(rng), ub(rng));
    const double eps = ue(rng);
    const StencilDerivatives d = stencil_derivatives(L.mu, a.t, lambda, eps);
    const double r = std::abs(d.s_t - 0.25 * (d.s_a * d.s_a - d.s_b * d.s_b) - eps * d.s_eps * d.s_eps);
    worst = std::max(worst, r);
    os << fmt(lambda.real()) << ',' << fmt(lambda.imag()) << ',' << fmt(eps) << ',' << fmt(d.s) << ',' << fmt(r)
       << '\n';
  }
  std::cout << "max residual = " << fmt(worst) << '\n';
  return 0;
}

int cmd_verify(const Args& a) {
  Loaded L = load(a);
  VerifyOptions opts;
  opts.grid = a.grid;
  opts.seed = a.seed;
  opts.tol_scale = a.limit_scale;
  const auto results = run_invariants(L.mu, a.t, opts);
  bool ok = true;
  std::printf("%-26s %-6s %-24s %-10s %s\n", "check", "status", "value", "limit", "detail");
  for (const CheckResult& r : results) {
    ok = ok && r.pass;
    std::printf("%-26s %-6s %-24s %-10.3g %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", fmt(r.value).c_str(),
                r.limit, r.detail.c_str());
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brown measure of x0 + i sigma_t"};
  app.require_subcommand(1);
  Args args;
  auto common = [&](CLI::App* sub) {
    auto* m = sub->add_option("--measure", args.measure_path, "measure JSON file")->check(CLI::ExistingFile);
    auto* p = sub->add_option("--preset", args.preset, "semicircle[:s] | uniform[:lo,hi] | bernoulli[:alpha] | power[:k]");
    m->excludes(p);
    sub->add_option("--t", args.t, "time")->capture_default_str();
    sub->add_option("--grid", args.grid, "grid points per interval")->capture_default_str()->check(CLI::Range(16, 1 << 22));
    sub->add_option("--out", args.out, "output directory")->capture_default_str();
    sub->add_flag("--svg", args.svg, "also write figure.svg");
    sub->add_option("--seed", args.seed, "random seed")->capture_default_str();
    sub->add_option("--n", args.n, "matrix size, or sample count for characteristics")->capture_default_str();
    sub->add_option("--reps", args.reps, "matrix repetitions")->capture_default_str();
    sub->add_option("--dilation", args.dilation, "inside-test dilation")->capture_default_str();
    sub->add_option("--tol", args.tol, "relative quadrature tolerance")->capture_default_str();
  };
  int (*handlers[])(const Args&) = {cmd_compute, cmd_pushforward, cmd_simulate, cmd_jn, cmd_characteristics, cmd_verify};
  const char* names[] = {"compute", "pushforward", "simulate", "jn", "characteristics", "verify"};
  const char* help[] = {"Brown density profile, summary and figure",
                        "push-forward maps and the additive law",
                        "random-matrix eigenvalue cloud and comparison",
                        "Jarosz-Nowak cross-check",
                        "Hamilton-Jacobi residuals along sampled points",
                        "run the invariant suite"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 6; ++i) {
    subs.push_back(app.add_subcommand(names[i], help[i]));
    common(subs.back());
  }
  subs.back()->add_option("--limit-scale", args.limit_scale, "multiply every pass limit")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    for (int i = 0; i < 6; ++i)
      if (subs[i]->parsed()) return handlers[i](args);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.is_validation() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
