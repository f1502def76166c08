// fracperim command-line front end.
//
// Exit status: 0 when every check passes (or the command only computes), 1 when a
// check fails, 2 on input errors.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fracperim/instances.hpp"
#include "fracperim/io.hpp"
#include "fracperim/potential.hpp"
#include "fracperim/solver.hpp"
#include "fracperim/suite.hpp"
#include "fracperim/verify.hpp"

using namespace fracperim;

namespace {

struct Globals {
  std::string space_path;
  double s = 0.5;
  std::string kernel_cache;
  std::uint64_t seed = 0;
  std::string out_dir;
  double tol = 1.0;  // multiplies every default tolerance
  bool csv = false;
};

struct Outcome {
  json result;
  std::string csv;  // header line + rows
  bool pass = true;
};

class Context {
 public:
  explicit Context(const Globals& g) : g_(g) {}

  const std::shared_ptr<const Space>& space() {
    if (!space_) {
      if (g_.space_path.empty()) throw InputError("--space is required for this command");
      space_ = std::make_shared<const Space>(load_space(g_.space_path));
    }
    return space_;
  }
  const Kernel& kernel() {
    if (!kernel_) {
      if (!(g_.s > 0.0 && g_.s < 1.0)) throw InputError("--s must lie in (0,1)");
      kernel_ = std::make_unique<Kernel>(cached_kernel(space(), g_.s, g_.kernel_cache));
    }
    return *kernel_;
  }
  std::size_t n() { return space()->size(); }
  PointId point(std::size_t id, const char* what) {
    if (id >= n())
      throw InputError(std::string(what) + "=" + std::to_string(id) + " is not a point id (space has " +
                       std::to_string(n()) + " points)");
    return static_cast<PointId>(id);
  }
  SetMask mask(const std::string& spec) { return parse_mask(spec, n()); }
  const Globals& globals() const { return g_; }

 private:
  const Globals& g_;
  std::shared_ptr<const Space> space_;
  std::unique_ptr<Kernel> kernel_;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Outcome report_outcome(const Report& r) {
  return {to_json(r), csv_header() + "\n" + csv_row(r) + "\n", r.pass};
}

Outcome solution_outcome(const CutSolution& sol) {
  std::ostringstream os;
  os << std::setprecision(17) << "energy,certificate,certificate_error,degenerate\n"
     << sol.energy << ',' << sol.certificate << ',' << sol.certificate_error() << ',' << sol.degenerate << '\n';
  return {to_json(sol), os.str(), true};
}

Outcome profile_outcome(const ScaleProfile& p, json extra = json::object()) {
  std::ostringstream os;
  os << std::setprecision(17) << "radius,value\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i) os << p.radii[i] << ',' << p.values[i] << '\n';
  json j = to_json(p);
  j["strictly_decreasing"] = p.strictly_decreasing();
  for (auto& [key, v] : extra.items()) j[key] = v;
  return {j, os.str(), true};
}

// Radii from an explicit list or a geometric ladder R, R/M, ...
struct RadiusOptions {
  std::vector<double> radii;
  double R = 0.0, M = 2.0;
  std::size_t count = 4;

  void add(CLI::App* cmd) {
    cmd->add_option("--radii", radii, "Strictly decreasing radii")->delimiter(',');
    cmd->add_option("--R", R, "Largest radius of a geometric ladder");
    cmd->add_option("--M", M, "Ladder ratio");
    cmd->add_option("--count", count, "Ladder length");
  }
  std::vector<double> get() const {
    std::vector<double> r = radii;
    if (r.empty()) {
      if (!(R > 0.0)) throw InputError("give --radii or a ladder via --R/--M/--count");
      if (!(M > 1.0)) throw InputError("--M must exceed 1");
      r = geometric_radii(R, M, count);
    }
    try {
      require_decreasing_radii(r);
    } catch (const Error& e) {
      throw InputError(e.what());
    }
    return r;
  }
};

// A field either from --u or, when absent, as the obstacle solution for --omega/--psi/--f.
struct FieldSource {
  std::string u, omega, psi = "-inf", f;

  void add(CLI::App* cmd) {
    cmd->add_option("--u", u, "Field (@file or comma list)");
    cmd->add_option("--omega", omega, "Domain of the obstacle problem used when --u is absent");
    cmd->add_option("--psi", psi, "Obstacle on omega (constant, list or @file)");
    cmd->add_option("--f", f, "Boundary values off omega (constant, list or @file)");
  }
  // Returns the field and whether it came from the solver.
  std::pair<Field, bool> get(Context& ctx) const {
    if (!u.empty()) return {parse_field(u, ctx.n()), false};
    if (omega.empty() || f.empty()) throw InputError("give --u, or --omega and --f to solve for the field");
    const ObstacleSpec spec(ctx.mask(omega), parse_field_or_constant(psi, ctx.n()),
                            parse_field_or_constant(f, ctx.n()));
    return {solve_general_obstacle(ctx.kernel(), spec).field, true};
  }
};

void mark_hypothesis(Report& r, bool from_solver) {
  r.flags.push_back(from_solver ? "hypothesis: field is a solver output" : "hypothesis unverified");
}

void write_outputs(const Globals& g, const std::string& name, const json& doc, const std::string& csv) {
  namespace fs = std::filesystem;
  fs::create_directories(g.out_dir);
  write_text((fs::path(g.out_dir) / (name + ".json")).string(), doc.dump(2) + "\n");
  write_text((fs::path(g.out_dir) / (name + ".csv")).string(), csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracperim: nonlocal W^{s,1} perimeters, capacities and obstacle problems on finite metric measure spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--space", g.space_path, "Space JSON file");
  app.add_option("--s", g.s, "Fractional order in (0,1)");
  app.add_option("--kernel-cache", g.kernel_cache, "Kernel cache file (reused when the content hash matches)");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--out", g.out_dir, "Directory for JSON and CSV artifacts");
  app.add_option("--tol", g.tol, "Multiplier applied to every default tolerance");
  app.add_flag("--csv", g.csv, "Print CSV instead of JSON on stdout");

  std::string command;
  std::function<Outcome(Context&)> action;
  auto bind = [&](CLI::App* cmd, std::string name, std::function<Outcome(Context&)> fn) {
    cmd->callback([&command, &action, name = std::move(name), fn = std::move(fn)] {
      command = name;
      action = fn;
    });
  };

  // ---------------------------------------------------------------- solve
  auto* solve = app.add_subcommand("solve", "Obstacle problems")->require_subcommand(1);
  std::string so_A, so_omega, so_psi = "-inf", so_f;
  bool so_lp = false;
  auto* so_set = solve->add_subcommand("set-obstacle", "Minimise the perimeter over A c E c omega");
  so_set->add_option("--A", so_A)->required();
  so_set->add_option("--omega", so_omega)->required();
  bind(so_set, "solve-set-obstacle", [&](Context& c) {
    return solution_outcome(solve_set_obstacle(c.kernel(), c.mask(so_A), c.mask(so_omega)));
  });
  auto* so_gen = solve->add_subcommand("obstacle", "Minimise the seminorm over u >= psi on omega, u = f off omega");
  so_gen->add_option("--omega", so_omega)->required();
  so_gen->add_option("--psi", so_psi, "Obstacle (constant, list or @file; -inf for none)");
  so_gen->add_option("--f", so_f, "Boundary values")->required();
  so_gen->add_flag("--lp", so_lp, "Also solve the linear-programming formulation and compare");
  bind(so_gen, "solve-obstacle", [&](Context& c) {
    const ObstacleSpec spec(c.mask(so_omega), parse_field_or_constant(so_psi, c.n()),
                            parse_field_or_constant(so_f, c.n()));
    const auto sol = solve_general_obstacle(c.kernel(), spec);
    Outcome out = solution_outcome(sol);
    if (so_lp) {
      const auto lp = lp_oracle(c.kernel(), spec);
      const double diff = std::abs(lp.energy - sol.energy) / std::max(1.0, std::abs(sol.energy));
      out.result["lp"] = to_json(lp);
      out.result["lp_relative_difference"] = diff;
      out.pass = diff <= 1e-9 * c.globals().tol;
    }
    return out;
  });

  // ---------------------------------------------------------------- capacity
  auto* cap = app.add_subcommand("capacity", "Condenser and total capacities")->require_subcommand(1);
  std::string ca_A, ca_F;
  auto* ca_cond = cap->add_subcommand("condenser", "cap(A, F)");
  ca_cond->add_option("--A", ca_A)->required();
  ca_cond->add_option("--F", ca_F)->required();
  bind(ca_cond, "capacity-condenser",
       [&](Context& c) { return solution_outcome(condenser_capacity(c.kernel(), c.mask(ca_A), c.mask(ca_F))); });
  auto* ca_total = cap->add_subcommand("total", "Capacity with the mass term");
  ca_total->add_option("--A", ca_A)->required();
  bind(ca_total, "capacity-total", [&](Context& c) { return solution_outcome(total_capacity(c.kernel(), c.mask(ca_A))); });

  // ---------------------------------------------------------------- scan / content
  auto* scan = app.add_subcommand("scan", "Profiles along shrinking radii")->require_subcommand(1);
  std::string sc_set, sc_u;
  std::size_t sc_x = 0;
  double sc_theta = kDensityTolerance;
  RadiusOptions sc_radii;
  auto* sc_thin = scan->add_subcommand("thinness", "Capacity ratio of A at x");
  sc_thin->add_option("--A", sc_set)->required();
  sc_thin->add_option("--x", sc_x)->required();
  sc_radii.add(sc_thin);
  bind(sc_thin, "scan-thinness", [&](Context& c) {
    const auto t = thinness_scan(c.kernel(), c.mask(sc_set), c.point(sc_x, "x"), sc_radii.get());
    return profile_outcome(t.profile, {{"numerators", t.numerators}, {"denominators", t.denominators},
                                       {"skipped_radii", t.skipped}});
  });
  auto* sc_dens = scan->add_subcommand("density", "Density of E at x");
  sc_dens->add_option("--E", sc_set)->required();
  sc_dens->add_option("--x", sc_x)->required();
  sc_dens->add_option("--theta", sc_theta, "Classification tolerance");
  sc_radii.add(sc_dens);
  bind(sc_dens, "scan-density", [&](Context& c) {
    const auto d = density_classify(*c.space(), c.mask(sc_set), c.point(sc_x, "x"), sc_radii.get(), sc_theta);
    return profile_outcome(d.profile, {{"class", to_string(d.cls)}, {"theta", sc_theta}});
  });
  auto* sc_leb = scan->add_subcommand("lebesgue", "Mean oscillation of u around x");
  sc_leb->add_option("--u", sc_u)->required();
  sc_leb->add_option("--x", sc_x)->required();
  sc_radii.add(sc_leb);
  bind(sc_leb, "scan-lebesgue", [&](Context& c) {
    const Field u = parse_field(sc_u, c.n());
    return profile_outcome(lebesgue_profile(*c.space(), u, c.point(sc_x, "x"), sc_radii.get()));
  });

  auto* content = app.add_subcommand("content", "Hausdorff content")->require_subcommand(1);
  std::string hc_A, hc_mode = "greedy";
  double hc_R = 0.0;
  auto* hc = content->add_subcommand("hausdorff", "R-restricted codimension-s content of A");
  hc->add_option("--A", hc_A)->required();
  hc->add_option("--R", hc_R)->required();
  hc->add_option("--mode", hc_mode)->check(CLI::IsMember({"greedy", "exact"}));
  bind(hc, "content-hausdorff", [&](Context& c) {
    const auto mode = hc_mode == "exact" ? ContentMode::Exact : ContentMode::Greedy;
    const auto h = hausdorff_content(*c.space(), c.globals().s, c.mask(hc_A), hc_R, mode);
    json cover = json::array();
    std::ostringstream os;
    os << std::setprecision(17) << "center,radius,cost\n";
    for (const auto& b : h.cover) {
      cover.push_back({{"center", b.center}, {"radius", b.radius}, {"cost", b.cost}});
      os << b.center << ',' << b.radius << ',' << b.cost << '\n';
    }
    return Outcome{{{"value", h.value}, {"mode", hc_mode}, {"R", hc_R}, {"candidates", h.candidates}, {"cover", cover}},
                   os.str(), true};
  });

  // ---------------------------------------------------------------- verify
  auto* verify = app.add_subcommand("verify", "Inequality checks producing reports")->require_subcommand(1);
  FieldSource vf;
  std::string v_omega = "all", v_set;
  std::size_t v_x = 0;
  double v_r = 0.0, v_R = 0.0, v_k0 = 0.0, v_Q = 2.0, v_thr = std::numeric_limits<double>::infinity();
  double v_rho = 0.0, v_theta = 0.5, v_r1 = 0.0, v_r2 = 0.0, v_c0 = 0.25, v_scale = 0.0, v_cmu = 1.0, v_eps = 1.0;
  std::optional<double> v_C;
  std::size_t v_k = 0, v_L = 2, v_J = 3, v_maxk = 64, v_trials = 200;
  std::vector<double> v_radii;

  auto* vc = verify->add_subcommand("coarea", "Seminorm against its layer decomposition");
  vc->add_option("--u", vf.u, "Field; a seeded random field when absent");
  vc->add_option("--omega", v_omega);
  bind(vc, "verify-coarea", [&](Context& c) {
    Field u;
    if (vf.u.empty()) {
      std::mt19937_64 rng(c.globals().seed);
      for (std::size_t i = 0; i < c.n(); ++i) u.push_back(std::floor(5.0 * uniform01(rng)));
    } else {
      u = parse_field(vf.u, c.n());
    }
    auto out = report_outcome(coarea_check(c.kernel(), u, c.mask(v_omega), 1e-10 * c.globals().tol));
    out.result["u"] = field_to_json(u);
    return out;
  });

  auto* vh = verify->add_subcommand("harnack", "Weak Harnack estimate at x0");
  vf.add(vh);
  vh->add_option("--x0", v_x)->required();
  vh->add_option("--r", v_r)->required();
  vh->add_option("--R", v_R)->required();
  vh->add_option("--k0", v_k0);
  vh->add_option("--Q", v_Q);
  vh->add_option("--threshold", v_thr);
  bind(vh, "verify-harnack", [&](Context& c) {
    const auto [u, solved] = vf.get(c);
    Report r = harnack_check(c.kernel(), u, c.point(v_x, "x0"), v_r, v_R, v_k0, v_Q, v_thr);
    mark_hypothesis(r, solved);
    return report_outcome(r);
  });

  auto* vcc = verify->add_subcommand("caccioppoli", "Energy of (u-k)_+ against its mass");
  vf.add(vcc);
  vcc->add_option("--level", v_k0)->required();
  vcc->add_option("--x0", v_x)->required();
  vcc->add_option("--rho", v_rho)->required();
  vcc->add_option("--R", v_R)->required();
  vcc->add_option("--threshold", v_thr);
  bind(vcc, "verify-caccioppoli", [&](Context& c) {
    const auto [u, solved] = vf.get(c);
    Report r = caccioppoli_check(c.kernel(), u, v_k0, c.point(v_x, "x0"), v_rho, v_R, v_thr);
    mark_hypothesis(r, solved);
    return report_outcome(r);
  });

  auto* vdg = verify->add_subcommand("degiorgi", "Level/radius iteration; bisects C when not given");
  vf.add(vdg);
  vdg->add_option("--x0", v_x)->required();
  vdg->add_option("--r", v_r)->required();
  vdg->add_option("--R", v_R)->required();
  vdg->add_option("--k0", v_k0);
  vdg->add_option("--Q", v_Q);
  vdg->add_option("--C", v_C);
  bind(vdg, "verify-degiorgi", [&](Context& c) {
    const auto [u, solved] = vf.get(c);
    Report r = degiorgi_iterate(c.kernel(), u, c.point(v_x, "x0"), v_r, v_R, v_k0, v_Q, v_C);
    mark_hypothesis(r, solved);
    return report_outcome(r);
  });

  auto* vp = verify->add_subcommand("poincare", "Mean oscillation on B(x,r) against r^s times the seminorm");
  vp->add_option("--u", vf.u)->required();
  vp->add_option("--x", v_x)->required();
  vp->add_option("--r", v_r)->required();
  vp->add_option("--threshold", v_thr);
  bind(vp, "verify-poincare", [&](Context& c) {
    const PointId x = c.point(v_x, "x");
    return report_outcome(poincare_check(c.kernel(), ball(*c.space(), x, v_r), v_r, parse_field(vf.u, c.n()), v_thr));
  });

  auto* vi = verify->add_subcommand("isoperimetric", "mu(E) against r^s P(E) for E in B(x,r)");
  vi->add_option("--E", v_set)->required();
  vi->add_option("--x", v_x)->required();
  vi->add_option("--r", v_r)->required();
  vi->add_option("--threshold", v_thr);
  bind(vi, "verify-isoperimetric", [&](Context& c) {
    return report_outcome(isoperimetric_check(c.kernel(), c.mask(v_set), c.point(v_x, "x"), v_r, v_thr));
  });

  auto* vb = verify->add_subcommand("ball-cap", "cap(B(x,r), B(x,R)) against mu(B(x,r))/r^s");
  vb->add_option("--x", v_x)->required();
  vb->add_option("--r", v_r)->required();
  vb->add_option("--R", v_R)->required();
  vb->add_option("--theta", v_theta);
  vb->add_option("--bound", v_thr);
  bind(vb, "verify-ball-cap", [&](Context& c) {
    return report_outcome(ball_capacity_check(c.kernel(), c.point(v_x, "x"), v_r, v_R, v_theta, v_thr));
  });

  auto* vcmp = verify->add_subcommand("cap-compare", "Capacity comparisons across target balls");
  vcmp->add_option("--A", v_set)->required();
  vcmp->add_option("--x", v_x)->required();
  vcmp->add_option("--r", v_r)->required();
  vcmp->add_option("--r1", v_r1)->required();
  vcmp->add_option("--r2", v_r2)->required();
  bind(vcmp, "verify-cap-compare", [&](Context& c) {
    return report_outcome(capacity_comparisons(c.kernel(), c.mask(v_set), c.point(v_x, "x"), v_r, v_r1, v_r2));
  });

  auto* vak = verify->add_subcommand("annulus-k", "Smallest k with the annulus capacity bound");
  vak->add_option("--x", v_x)->required();
  vak->add_option("--r", v_r)->required();
  vak->add_option("--c0", v_c0);
  vak->add_option("--max-k", v_maxk);
  bind(vak, "verify-annulus-k", [&](Context& c) {
    const auto a = find_annulus_k(c.kernel(), c.point(v_x, "x"), v_r, v_c0, v_maxk);
    Outcome out = report_outcome(a.report);
    out.result["k"] = a.k;
    out.result["found"] = a.found;
    out.result["scale_floor"] = a.scale_floor;
    out.pass = a.found;
    return out;
  });

  auto* vwc = verify->add_subcommand("weak-cartan", "Superminimizer family separating x from W");
  vwc->add_option("--W", v_set)->required();
  vwc->add_option("--x", v_x)->required();
  vwc->add_option("--R", v_R)->required();
  vwc->add_option("--k", v_k, "Annulus constant; computed at radius R when omitted");
  vwc->add_option("--L", v_L);
  vwc->add_option("--c0", v_c0);
  vwc->add_option("--trials", v_trials);
  bind(vwc, "verify-weak-cartan", [&](Context& c) {
    const PointId x = c.point(v_x, "x");
    std::size_t kk = v_k;
    json annulus;
    if (kk == 0) {
      const auto a = find_annulus_k(c.kernel(), x, v_R, v_c0);
      if (!a.found) throw InputError("no annulus constant at this radius; pass --k explicitly");
      kk = a.k;
      annulus = to_json(a.report);
    }
    const auto fam = weak_cartan(c.kernel(), c.mask(v_set), x, v_R, kk, v_L, 1.0, v_trials, c.globals().seed);
    json checks = json::array(), sets = json::array();
    std::string csv = csv_header() + "\n";
    for (const auto& r : fam.checks) {
      checks.push_back(to_json(r));
      csv += csv_row(r) + "\n";
    }
    for (std::size_t i = 0; i < fam.E.size(); ++i)
      sets.push_back({{"i", i}, {"W", mask_to_json(fam.W[i])}, {"E", mask_to_json(fam.E[i])}});
    json j{{"x", x}, {"R", v_R}, {"k", kk}, {"L", v_L}, {"hypothesis_ratio", fam.hypothesis_ratio},
           {"sets", sets}, {"checks", checks}, {"pass", fam.pass}};
    if (!annulus.is_null()) j["annulus"] = annulus;
    return Outcome{j, csv, fam.pass};
  });

  auto* vsc = verify->add_subcommand("strong-cartan", "Series construction along A with a small value at x");
  vsc->add_option("--A", v_set)->required();
  vsc->add_option("--x", v_x)->required();
  vsc->add_option("--R0", v_R)->required();
  vsc->add_option("--J", v_J);
  vsc->add_option("--eps", v_eps);
  bind(vsc, "verify-strong-cartan", [&](Context& c) {
    const auto sc = strong_cartan(c.kernel(), c.mask(v_set), c.point(v_x, "x"), v_R, v_J, v_eps);
    Outcome out = report_outcome(sc.report);
    out.result["u"] = field_to_json(sc.u);
    out.result["ladder"] = sc.ladder;
    out.result["capacities"] = sc.capacities;
    out.result["lower_limits"] = sc.lower_limits;
    out.result["value_at_x"] = sc.value_at_x;
    return out;
  });

  auto* vbc = verify->add_subcommand("boundary-cap", "Capacity of density-classified parts of E");
  vbc->add_option("--E", v_set)->required();
  vbc->add_option("--x", v_x)->required();
  vbc->add_option("--r", v_r)->required();
  vbc->add_option("--scale", v_scale)->required();
  vbc->add_option("--C-mu", v_cmu);
  bind(vbc, "verify-boundary-cap", [&](Context& c) {
    return report_outcome(boundary_capacity_check(c.kernel(), c.mask(v_set), c.point(v_x, "x"), v_r, v_scale, v_cmu));
  });

  auto* vps = verify->add_subcommand("perimeter-scan", "Perimeter of B(z,r) along the radii");
  vps->add_option("--z", v_x)->required();
  vps->add_option("--radii", v_radii)->delimiter(',')->required();
  bind(vps, "verify-perimeter-scan", [&](Context& c) {
    return report_outcome(ball_perimeter_scan(c.kernel(), c.point(v_x, "z"), v_radii));
  });

  // ---------------------------------------------------------------- suite
  auto* suite = app.add_subcommand("suite", "Run the acceptance battery on generated instances");
  std::vector<int> su_criteria;
  std::size_t su_trials = 1000;
  bool su_empty = false;
  suite->add_option("--criteria", su_criteria, "Subset of criterion ids 1-12")->delimiter(',');
  suite->add_flag("--none", su_empty, "Select no criteria (rejected)");
  suite->add_option("--trials", su_trials, "Perturbations per certificate");
  bind(suite, "suite", [&](Context& c) {
    if (su_empty) throw InputError("empty criterion selection");
    for (int id : su_criteria)
      if (id < 1 || id > kCriterionCount) throw InputError("criterion ids lie in 1.." + std::to_string(kCriterionCount));
    SuiteConfig cfg;
    cfg.seed = c.globals().seed;
    cfg.tol_scale = c.globals().tol;
    cfg.criteria = su_criteria;
    cfg.certificate_trials = su_trials;
    const auto res = run_suite(cfg, [](const CriterionResult& r) {
      std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << ' ' << r.title << ": " << r.summary << '\n';
    });
    std::string csv = "id,title,pass,summary\n";
    for (const auto& r : res.results)
      csv += std::to_string(r.id) + ",\"" + r.title + "\"," + (r.pass ? "1" : "0") + ",\"" + r.summary + "\"\n";
    return Outcome{res.to_json(), csv, res.pass()};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Context ctx(g);
    Outcome out = action(ctx);
    json doc{{"command", command},
             {"timestamp", timestamp()},
             {"seed", g.seed},
             {"tolerance_scale", g.tol},
             {"pass", out.pass},
             {"result", out.result}};
    if (!g.space_path.empty()) {
      doc["space"] = g.space_path;
      doc["s"] = g.s;
    }
    if (g.csv) std::cout << out.csv;
    else std::cout << doc.dump(2) << '\n';
    if (!g.out_dir.empty()) write_outputs(g, command, doc, out.csv);
    return out.pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "fracperim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fracperim: " << e.what() << '\n';
    return 2;
  }
}
