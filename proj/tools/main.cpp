#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "io.hpp"
#include "semigen/error.hpp"
#include "semigen/herglotz.hpp"
#include "semigen/loewner_cp.hpp"
#include "semigen/sampling.hpp"

using namespace semigen;
using io::Json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerification = 4;
constexpr double kSignFloor = 1e-9;

struct Options {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  double tolerance = kSignFloor;
  std::vector<std::string> formats;

  bool wants(const std::string& f) const {
    return formats.empty() || std::find(formats.begin(), formats.end(), f) != formats.end();
  }
  std::string path(const std::string& name) const { return (std::filesystem::path(out) / name).string(); }
  void ensure_out() const {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out);
  }
};

Json load_config(const Options& opt) {
  if (opt.config.empty()) throw ConfigError("--config is required");
  return io::read_json_file(opt.config);
}

std::vector<Complex> points_of(const std::vector<BoundarySample>& samples) {
  std::vector<Complex> out;
  for (const auto& s : samples) out.push_back(s.point);
  return out;
}

std::optional<Complex> optional_complex(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return io::complex_from_json(j.at(key));
}

struct NamedRegion {
  std::string name;
  Json descriptor;
  std::vector<BoundarySample> samples;
};

template <class Region>
NamedRegion named(const std::string& name, const Region& region, Json descriptor, std::size_t n) {
  return {name, std::move(descriptor), sample_boundary(region, n)};
}

int cmd_region(const std::string& kind, const Options& opt) {
  const Json cfg = load_config(opt);
  const FixedPointConfig config = io::config_from_json(cfg);
  const std::size_t n = opt.samples ? opt.samples : 720;
  const auto zeta = optional_complex(cfg, "zeta");
  const auto omega = optional_complex(cfg, "omega");
  std::vector<NamedRegion> regions;

  if (kind == "interior") {
    if (config.is_origin() || config.is_boundary()) throw DomainError("interior regions need 0 < |tau| < 1");
    regions.push_back(named("Z", region_Z(config), io::disk_to_json(region_Z(config)), n));
    if (zeta) {
      const auto om = region_Omega(config, *zeta);
      regions.push_back(named("Omega", om, io::charted_to_json(om), n));
    }
  } else if (kind == "origin") {
    if (!config.is_origin()) throw DomainError("origin regions need tau = 0");
    const auto om = region_Omega_origin(config);
    regions.push_back(named("Omega", om, io::disk_to_json(om), n));
    if (omega) {
      const auto z = region_Z_omega(config, *omega);
      regions.push_back(named("Z_omega", z, io::charted_to_json(z), n));
    }
  } else if (kind == "boundary") {
    if (!config.is_boundary()) throw DomainError("boundary regions need |tau| = 1");
    regions.push_back(named("Z", region_Z(config), io::disk_to_json(region_Z(config)), n));
    const auto lam = std::get<IntervalRegion>(lambda_range(config).region);
    regions.push_back(named("lambda", lam, io::interval_to_json(lam), n));
    if (zeta) {
      const auto iz = interval_I(config, *zeta);
      regions.push_back(named("I", iz, io::interval_to_json(iz), n));
    }
  } else {
    if (!config.is_boundary()) throw DomainError("parabolic regions need |tau| = 1");
    if (!zeta) throw ConfigError("parabolic regions need \"zeta\"");
    regions.push_back(named("Z", region_Z(config), io::disk_to_json(region_Z(config)), n));
    const auto beta = parabolic_region(config, *zeta);
    regions.push_back(named("beta", beta, io::interval_to_json(beta), n));
  }

  opt.ensure_out();
  Json report{{"kind", kind}, {"config", io::config_to_json(config)}, {"regions", Json::object()}};
  if (zeta) report["zeta"] = io::complex_to_json(*zeta);
  if (omega) report["omega"] = io::complex_to_json(*omega);
  std::vector<std::vector<Complex>> paths;
  for (const auto& r : regions) {
    report["regions"][r.name] = r.descriptor;
    if (opt.wants("csv")) io::write_text_file(opt.path(r.name + ".csv"), io::region_csv(r.samples));
    paths.push_back(points_of(r.samples));
  }
  if (opt.wants("svg")) io::write_text_file(opt.path("region.svg"), io::svg_document(paths));
  if (opt.wants("json")) io::write_text_file(opt.path("region.json"), report.dump(2) + "\n");
  std::cout << report["regions"].dump() << "\n";
  return 0;
}

ODESettings settings_from_json(const Json& cfg) {
  ODESettings s;
  if (cfg.contains("settings")) {
    const Json& j = cfg.at("settings");
    s.rel_tol = j.value("rel_tol", s.rel_tol);
    s.abs_tol = j.value("abs_tol", s.abs_tol);
    s.max_step = j.value("max_step", s.max_step);
    s.boundary_guard = j.value("boundary_guard", s.boundary_guard);
  }
  s.validate();
  return s;
}

int cmd_flow(const Options& opt) {
  const Json cfg = load_config(opt);
  if (!cfg.contains("generator") || !cfg.contains("z0") || !cfg.contains("t"))
    throw ConfigError("flow configs need \"generator\", \"z0\" and \"t\"");
  const Generator g = io::generator_from_json(cfg.at("generator"));
  const Complex z0 = io::complex_from_json(cfg.at("z0"));
  if (!cfg.at("t").is_number()) throw ConfigError("\"t\" must be a number");
  const double t = cfg.at("t").get<double>();
  if (!(t >= 0.0)) throw DomainError("flow time must be nonnegative");
  const Trajectory tr = integrate_trajectory(g, z0, t, true, settings_from_json(cfg));

  opt.ensure_out();
  if (opt.wants("csv")) io::write_text_file(opt.path("trajectory.csv"), io::trajectory_csv(tr));
  Json result{{"t", t}, {"phi", io::complex_to_json(tr.points.back())}, {"dphi", io::complex_to_json(tr.derivs->back())},
              {"steps", tr.times.size() - 1}};
  if (opt.wants("json")) io::write_text_file(opt.path("flow.json"), result.dump(2) + "\n");
  std::cout << result.dump() << "\n";
  return 0;
}

struct CheckTally {
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  std::size_t warnings = 0;
  double min_relative_slack = std::numeric_limits<double>::infinity();
};

int cmd_verify(const Options& opt) {
  const std::size_t total = opt.samples ? opt.samples : 10000;
  const double sign_tol = std::max(opt.tolerance, kSignFloor);
  const Regime regimes[] = {Regime::Interior, Regime::Origin, Regime::BoundaryHyperbolic, Regime::BoundaryParabolic};

  std::ostringstream out;
  out << "samples " << total << " seed " << opt.seed << " tolerance " << io::format_number(opt.tolerance) << "\n";
  std::size_t violations = 0;
  std::size_t errors = 0;
  for (std::size_t r = 0; r < 4; ++r) {
    const std::size_t quota = total / 4 + (r < total % 4 ? 1 : 0);
    std::vector<std::map<std::string, CheckTally>> shard_tallies(kDefaultShards);
    std::vector<std::size_t> shard_near(kDefaultShards, 0), shard_errors(kDefaultShards, 0);
    run_sharded(opt.seed + r, quota, kDefaultShards, [&](std::size_t shard, std::mt19937_64& rng, std::size_t count) {
      auto& tallies = shard_tallies[shard];
      for (std::size_t i = 0; i < count; ++i) {
        try {
          const auto rep = inequality_suite(random_spec(rng, regimes[r]));
          if (rep.near_miss) ++shard_near[shard];
          for (const auto& c : rep.checks) {
            auto& t = tallies[c.name];
            ++t.evaluated;
            if (c.violated(sign_tol)) ++t.violations;
            else if (c.violated(opt.tolerance)) ++t.warnings;
            t.min_relative_slack = std::min(t.min_relative_slack, c.slack / c.scale);
          }
        } catch (const Error&) {
          ++shard_errors[shard];
        }
      }
    });
    std::map<std::string, CheckTally> merged;
    std::size_t near = 0;
    for (std::size_t s = 0; s < kDefaultShards; ++s) {
      near += shard_near[s];
      errors += shard_errors[s];
      for (const auto& [name, t] : shard_tallies[s]) {
        auto& m = merged[name];
        m.evaluated += t.evaluated;
        m.violations += t.violations;
        m.warnings += t.warnings;
        m.min_relative_slack = std::min(m.min_relative_slack, t.min_relative_slack);
      }
    }
    out << "regime " << regime_name(regimes[r]) << " specs " << quota << " near_miss " << near << "\n";
    for (const auto& [name, t] : merged) {
      out << "  " << name << " evaluated " << t.evaluated << " violations " << t.violations << " warnings "
          << t.warnings << " min_relative_slack " << io::format_number(t.min_relative_slack) << "\n";
      violations += t.violations;
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  std::size_t q_failures = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(2 + i % 5);
    for (double& v : x) v = std::exp(logu(rng));
    if (!q_concavity_check(x, 50, opt.seed + i).pass) ++q_failures;
  }
  out << "q_concavity points 100 failures " << q_failures << "\n";
  out << "errors " << errors << "\n";
  const bool ok = violations == 0 && q_failures == 0 && errors == 0;
  out << "result " << (ok ? "PASS" : "FAIL") << "\n";
  std::cout << out.str();
  return ok ? 0 : kExitVerification;
}

int cmd_cowen_pommerenke(const Options& opt) {
  const Json cfg = load_config(opt);
  if (!cfg.contains("tau") || !cfg.contains("sigmas") || !cfg.contains("a"))
    throw ConfigError("Cowen-Pommerenke configs need \"tau\", \"sigmas\" and \"a\"");
  const Complex tau = io::complex_from_json(cfg.at("tau"));
  std::vector<BoundaryPoint> sigmas;
  for (const auto& s : cfg.at("sigmas")) {
    if (!s.is_number()) throw ConfigError("\"sigmas\" must hold angles");
    sigmas.emplace_back(s.get<double>());
  }
  if (!cfg.at("a").is_array()) throw ConfigError("\"a\" must be an array");
  const CPTarget target(cfg.at("a").get<std::vector<double>>());
  const Complex c = cfg.contains("c") ? io::complex_from_json(cfg.at("c")) : Complex(0.0);
  const std::size_t n = opt.samples ? opt.samples : 500;

  const PiecewiseField extremal = cp_extremal_field(tau, sigmas, target, c);
  const bool boundary = extremal.is_boundary();
  const CPResult ext = cp_experiment(tau, sigmas, target, extremal, {}, !boundary);

  Json report{{"target", target.a}, {"tau", io::complex_to_json(extremal.tau())}, {"radius", cp_radius(target)}};
  std::vector<BoundarySample> outline;
  if (boundary) {
    const auto region = cp_region_boundary(target);
    report["region"] = io::interval_to_json(region);
    outline = sample_boundary(region);
  } else {
    const auto region = cp_region(target);
    report["region"] = {{"center", io::complex_to_json(region.center)}, {"radius", region.radius}};
    outline = sample_boundary(region);
  }
  report["extremal"] = {{"c", io::complex_to_json(c)},
                        {"re", ext.point.real()},
                        {"im", ext.point.imag()},
                        {"slack", ext.slack}};
  if (!boundary) report["extremal"]["ode_residual"] = ext.ode_residual;

  std::mt19937_64 rng(opt.seed);
  Json points = Json::array();
  std::vector<io::SvgMark> marks{{ext.point, 0.03}};
  bool all_inside = ext.inside;
  double worst = ext.slack;
  for (std::size_t i = 0; i < n; ++i) {
    const CPResult r = cp_experiment(tau, sigmas, target, random_admissible_field(rng, tau, sigmas, target));
    points.push_back({{"re", r.point.real()}, {"im", r.point.imag()}, {"slack", r.slack}});
    marks.push_back({r.point, 0.012});
    all_inside = all_inside && r.inside;
    worst = std::min(worst, r.slack);
  }
  report["points"] = points;
  report["all_inside"] = all_inside;
  report["min_slack"] = worst;

  opt.ensure_out();
  if (opt.wants("json")) io::write_text_file(opt.path("cowen_pommerenke.json"), report.dump(2) + "\n");
  if (opt.wants("svg")) io::write_text_file(opt.path("cowen_pommerenke.svg"), io::svg_document({points_of(outline)}, marks));
  std::cout << "radius " << io::format_number(cp_radius(target)) << " extremal " << io::format_number(ext.point.real())
            << (ext.point.imag() < 0 ? "" : "+") << io::format_number(ext.point.imag()) << "i samples " << n
            << " min_slack " << io::format_number(worst) << " " << (all_inside ? "PASS" : "FAIL") << "\n";
  return all_inside ? 0 : kExitVerification;
}

int cmd_counterexample(const Options& opt) {
  std::ostringstream csv;
  csv << "kind,x,value\n";
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 6; ++k) {
    const double y = std::pow(10.0, -k);
    const double v = counterexample_P(y);
    monotone = monotone && v < prev;
    prev = v;
    csv << "P," << io::format_number(y) << ',' << io::format_number(v) << '\n';
  }
  prev = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4; ++k) {
    const double delta = std::exp(-std::exp(static_cast<double>(k)));
    const double v = counterexample_divergence(delta);
    monotone = monotone && v > prev;
    prev = v;
    csv << "divergence," << io::format_number(delta) << ',' << io::format_number(v) << '\n';
  }
  if (opt.wants("csv")) {
    opt.ensure_out();
    io::write_text_file(opt.path("counterexample.csv"), csv.str());
  }
  std::cout << csv.str();
  return monotone ? 0 : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinitesimal generators with prescribed boundary fixed points"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config, "JSON configuration file");
  app.add_option("--out", opt.out, "output directory");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--samples", opt.samples, "number of samples");
  app.add_option("--tolerance", opt.tolerance, "reporting tolerance");
  app.add_option("--format", opt.formats, "output format (repeatable)")
      ->check(CLI::IsMember({"csv", "svg", "json"}))
      ->take_all();

  std::string kind;
  auto* region = app.add_subcommand("region", "value regions and their boundaries");
  region->add_option("kind", kind, "interior, origin, boundary or parabolic")
      ->required()
      ->check(CLI::IsMember({"interior", "origin", "boundary", "parabolic"}));
  auto* flow = app.add_subcommand("flow", "integrate a semiflow trajectory");
  auto* verify = app.add_subcommand("verify", "randomized inequality suite");
  auto* cp = app.add_subcommand("cowen-pommerenke", "Cowen-Pommerenke region experiment");
  auto* counter = app.add_subcommand("counterexample", "table for the non-converse example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*region) return cmd_region(kind, opt);
    if (*flow) return cmd_flow(opt);
    if (*verify) return cmd_verify(opt);
    if (*cp) return cmd_cowen_pommerenke(opt);
    if (*counter) return cmd_counterexample(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitParse;
}
