// umk: config-driven experiment runner over the library.
//
// Subcommands write plot-ready CSV/JSON; a non-zero exit code means a
// requested invariant check failed. Schemas are versioned in the first
// comment line of each CSV.

#include "umk/analytic.hpp"
#include "umk/duality.hpp"
#include "umk/homogeneous.hpp"
#include "umk/io.hpp"
#include "umk/padic.hpp"
#include "umk/simulate.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "umk/acceptance.hpp"
#include "umk/random_models.hpp"

namespace {

using namespace umk;

std::string out_dir() {
  if (const char* env = std::getenv("UMK_OUT")) return env;
  return ".";
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

struct ModelArgs {
  std::string padic;   // "p=2,depth=3" or "p=2,depth=3,dim=2"
  std::string model_file;
  std::string sigma = "standard";  // standard | padic:alpha=1,b=2,p=2 | table:file.json
  std::string config_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--padic", padic, "p-adic window spec p=2,depth=3[,dim=1]");
    cmd->add_option("--model", model_file, "tree model JSON file");
    cmd->add_option("--sigma", sigma, "sigma spec: standard | padic:alpha=A,b=B,p=P");
    cmd->add_option("--config", config_file, "JSON config overriding flags");
  }

  Json config() const {
    if (config_file.empty()) return Json::object();
    std::ifstream in(config_file);
    if (!in.good()) fail(errc::config_error, "cannot read " + config_file);
    return Json::parse(in);
  }

  std::map<std::string, double> parse_kv(const std::string& spec) const {
    std::map<std::string, double> kv;
    std::string cur;
    std::istringstream in(spec);
    while (std::getline(in, cur, ',')) {
      auto eq = cur.find('=');
      if (eq == std::string::npos) fail(errc::config_error, "bad key=value " + cur);
      kv[cur.substr(0, eq)] = std::stod(cur.substr(eq + 1));
    }
    return kv;
  }

  BallTree tree() const {
    Json cfg = config();
    if (cfg.contains("model")) return tree_from_json(cfg.at("model"));
    if (!model_file.empty()) {
      std::ifstream in(model_file);
      if (!in.good()) fail(errc::config_error, "cannot read " + model_file);
      return tree_from_json(Json::parse(in));
    }
    if (!padic.empty()) {
      auto kv = parse_kv(padic);
      return BallTree::padic(static_cast<long>(kv.at("p")),
                             static_cast<int>(kv.at("depth")),
                             kv.count("dim") ? static_cast<int>(kv.at("dim")) : 1);
    }
    fail(errc::config_error, "no model given: use --padic or --model");
  }

  Sigma sigma_spec() const {
    Json cfg = config();
    if (cfg.contains("sigma")) return sigma_from_json(cfg.at("sigma"));
    if (sigma == "standard") return Sigma::standard();
    if (sigma.rfind("padic:", 0) == 0) {
      auto kv = parse_kv(sigma.substr(6));
      double alpha = kv.at("alpha");
      long p = kv.count("p") ? static_cast<long>(kv.at("p")) : 0;
      double b = kv.count("b") ? kv.at("b") : static_cast<double>(p ? p : 2);
      Json j{{"kind", "padic"}, {"alpha", alpha}, {"b", b}};
      if (p) j["p"] = p;
      return sigma_from_json(j);
    }
    if (sigma.rfind("table:", 0) == 0) {
      std::ifstream in(sigma.substr(6));
      return sigma_from_json(Json::parse(in));
    }
    fail(errc::config_error, "bad sigma spec " + sigma);
  }
};

std::vector<double> t_grid_of(const std::string& spec) {
  // "lo:hi:n" log-spaced, or a single value
  auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {std::stod(spec)};
  auto c2 = spec.find(':', c1 + 1);
  double lo = std::stod(spec.substr(0, c1));
  double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  int n = std::stoi(spec.substr(c2 + 1));
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return g;
}

int run_kernel(const ModelArgs& args, const std::string& t_spec, const std::string& dir,
               const std::string& envelope) {
  BallTree t = args.tree();
  HeatModel m(t, args.sigma_spec());
  CsvWriter csv(out_path(dir, "kernel.csv"), "umk kernel v1", {"t", "x", "y", "p", "envelope", "ratio"});
  bool ok = true;
  for (double tt : t_grid_of(t_spec)) {
    Eigen::MatrixXd k = m.kernel_matrix(tt);
    Eigen::MatrixXd a = m.transition_matrix(tt);
    for (int i = 0; i < k.rows(); ++i) ok &= std::abs(a.row(i).sum() - 1.0) < 1e-10;
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < k.cols(); ++j) {
        double env = 0.0, ratio = 0.0;
        if (envelope == "qp" && i != j) {
          double alpha = m.sigma().alpha();
          env = m.envelope_value(EnvelopeFamily::qp, {alpha, 0.0}, tt,
                                 t.distance(t.leaf_id(i), t.leaf_id(j)), 0.0, t.leaf_id(i));
          ratio = k(i, j) / env;
        }
        csv.row({tt, double(t.node(t.leaf_id(i)).external_id),
                 double(t.node(t.leaf_id(j)).external_id), k(i, j), env, ratio});
      }
  }
  std::cout << "kernel: wrote " << out_path(dir, "kernel.csv")
            << (ok ? " (rows stochastic)" : " (ROW-SUM CHECK FAILED)") << "\n";
  return ok ? 0 : 1;
}

int run_spectrum(const std::string& zp_spec, const ModelArgs& args, const std::string& dir) {
  std::unique_ptr<BallTree> tp;
  Sigma sig = Sigma::standard();
  if (!zp_spec.empty()) {
    auto kv = args.parse_kv(zp_spec);
    long p = static_cast<long>(kv.at("p"));
    double alpha = kv.at("alpha");
    int depth = static_cast<int>(kv.at("depth"));
    tp = std::make_unique<BallTree>(BallTree::padic(p, depth, 1));
    long half = static_cast<long>(std::lround(alpha * 2));
    sig = Sigma::padic_exact(p, half);
  } else {
    tp = std::make_unique<BallTree>(args.tree());
    sig = args.sigma_spec();
  }
  HeatModel m(*tp, sig);
  EigenSystem sys = eigensystem(m);
  Json j = spectrum_to_json(sys, *tp);
  std::ofstream out(out_path(dir, "spectrum.json"));
  out << j.dump(2) << "\n";
  std::cout << "spectrum: " << sys.dimension() << " modes ("
            << tp->leaf_count() << " atoms) -> " << out_path(dir, "spectrum.json") << "\n";
  return sys.dimension() == tp->leaf_count() ? 0 : 1;
}

int run_green(const std::string& qp, const std::string& taib, double dist,
              const std::string& config, const std::string& dir) {
  Json out;
  ModelArgs helper;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in.good()) fail(errc::config_error, "cannot read " + config);
    AnalyticModel m = analytic_from_json(Json::parse(in).at("model_spec"));
    auto g = m.green(dist);
    out["model"] = m.name();
    out["recurrent"] = g.recurrent;
    if (!g.recurrent) out["value"] = g.value;
  } else if (!qp.empty()) {
    auto kv = helper.parse_kv(qp);
    AnalyticModel m = AnalyticModel::vladimirov(static_cast<long>(kv.at("p")), kv.at("alpha"));
    auto g = m.green(dist);
    out["model"] = m.name();
    out["recurrent"] = g.recurrent;
    if (!g.recurrent) out["value"] = g.value;
  } else if (!taib.empty()) {
    auto kv = helper.parse_kv(taib);
    AnalyticModel m = AnalyticModel::taibleson(static_cast<long>(kv.at("p")),
                                               static_cast<int>(kv.at("n")), kv.at("alpha"));
    auto g = m.green(dist);
    out["model"] = m.name();
    out["recurrent"] = g.recurrent;
    if (!g.recurrent) out["value"] = g.value;
  } else {
    fail(errc::config_error, "green needs --qp or --taibleson");
  }
  std::ofstream f(out_path(dir, "green.json"));
  f << out.dump(2) << "\n";
  std::cout << "green: " << out.dump() << "\n";
  return 0;
}

int run_jump(const ModelArgs& args, const std::string& dir) {
  BallTree t = args.tree();
  HeatModel m(t, args.sigma_spec());
  CsvWriter csv(out_path(dir, "jump.csv"), "umk jump v1", {"x", "y", "J"});
  for (int i = 0; i < t.leaf_count(); ++i)
    for (int j = 0; j < t.leaf_count(); ++j) {
      if (i == j) continue;
      csv.row({double(t.node(t.leaf_id(i)).external_id),
               double(t.node(t.leaf_id(j)).external_id),
               m.jump_kernel(t.leaf_id(i), t.leaf_id(j))});
    }
  std::cout << "jump: wrote " << out_path(dir, "jump.csv") << "\n";
  return 0;
}

int run_moments(const ModelArgs& args, double gamma, const std::string& t_spec,
                const std::string& dir) {
  BallTree t = args.tree();
  HeatModel m(t, args.sigma_spec());
  auto rep = m.moments(t.leaf_id(0), gamma, t_grid_of(t_spec));
  CsvWriter csv(out_path(dir, "moments.csv"), "umk moments v1",
                {"t", "gamma", "M_exact", "M_quad", "lower", "upper"});
  for (size_t i = 0; i < rep.t_grid.size(); ++i)
    csv.row({rep.t_grid[i], gamma, rep.exact[i], rep.quadrature[i], rep.band_lo, rep.band_hi});
  bool ok = rep.max_abs_diff < 1e-8;
  std::cout << "moments: max |exact - quad| = " << rep.max_abs_diff << ", band ["
            << rep.band_lo << ", " << rep.band_hi << "] -> " << out_path(dir, "moments.csv")
            << "\n";
  return ok ? 0 : 1;
}

int run_envelope(const ModelArgs& args, const std::string& family, const std::string& t_spec,
                 const std::string& dir) {
  BallTree t = args.tree();
  HeatModel m(t, args.sigma_spec());
  EnvelopeFamily fam = EnvelopeFamily::doubling;
  EnvelopeParams par{m.sigma().alpha(), 0.0};
  if (family == "qp") fam = EnvelopeFamily::qp;
  else if (family == "doubling") fam = EnvelopeFamily::doubling;
  else fail(errc::config_error, "envelope family must be qp or doubling");
  Band band = m.envelope_band(fam, par, t_grid_of(t_spec));
  Json out{{"family", family}, {"band_lo", band.lo}, {"band_hi", band.hi}};
  std::ofstream f(out_path(dir, "envelope.json"));
  f << out.dump(2) << "\n";
  std::cout << "envelope: band [" << band.lo << ", " << band.hi << "]\n";
  return band.lo > 0 && std::isfinite(band.hi) ? 0 : 1;
}

int run_walk(const std::string& walk_file, uint64_t seed, const std::string& dir) {
  Walk<Rational> w;
  if (!walk_file.empty()) {
    std::ifstream in(walk_file);
    if (!in.good()) fail(errc::config_error, "cannot read " + walk_file);
    Json j = Json::parse(in);
    if (j.contains("homogeneous")) {
      const Json& h = j.at("homogeneous");
      long p = h.at("p").get<long>();
      double alpha = h.at("alpha").get<double>();
      long half = static_cast<long>(std::lround(alpha * 2));
      if (h.value("two_sided", false)) {
        // non-compact side has no finite absorbing realization; emit the
        // closed-form horocycle table instead
        HomogeneousWalk hw(p, half, true);
        auto nb = noncompact_boundary(hw, h.value("window", 8));
        CsvWriter csv(out_path(dir, "walk_noncompact.csv"), "umk walk-noncompact v1",
                      {"horocycle", "phi", "j", "martin", "measure"});
        for (size_t i = 0; i < nb.horocycles.size(); ++i)
          csv.row({double(nb.horocycles[i]), to_double(nb.phi[i]), to_double(nb.j[i]),
                   to_double(nb.martin[i]), to_double(nb.measure[i])});
        std::cout << "walk (two-sided): theta = " << to_double(nb.theta)
                  << ", C* = " << to_double(nb.c_star) << " -> "
                  << out_path(dir, "walk_noncompact.csv") << "\n";
        return 0;
      }
      Rational s = rational_pow(Rational(p), -static_cast<long>(std::lround(alpha)));
      w = truncated_rooted_walk(p, Rational(1) / (1 + s), h.value("depth", 6));
    } else {
      w = walk_from_json(j);
    }
  } else {
    Rng rng(seed, 0);
    w = random_conductance_walk(rng, 200);
  }
  auto s = solve_walk(w);
  auto nu = s.limit_distribution(0);
  CsvWriter csv(out_path(dir, "walk.csv"), "umk walk v1", {"vertex", "F_v_o", "G_v_o", "nu"});
  for (int v = 0; v < w.shape.size(); ++v) {
    double f = to_double(s.hit(v, 0));
    double g = w.shape.terminal(v) ? 0.0 : to_double(s.green(v, 0));
    double nuv = w.shape.terminal(v) ? to_double(nu[w.shape.leaf_ord[v]]) : 0.0;
    csv.row({double(v), f, g, nuv});
  }
  std::cout << "walk: " << w.shape.size() << " vertices -> " << out_path(dir, "walk.csv")
            << "\n";
  return 0;
}

int run_duality(bool roundtrip, uint64_t seed, const std::string& dir) {
  if (!roundtrip) fail(errc::config_error, "duality currently offers --roundtrip");
  Rng rng(seed, 0);
  Walk<Rational> w = random_conductance_walk(rng, 200);
  auto s = solve_walk(w);
  BoundaryModel bm = walk_to_boundary(s);
  auto rec = boundary_to_walk(bm.tree);
  Rational worst(0);
  for (int v = 0; v < w.shape.size(); ++v) {
    if (v != 0 && !w.shape.terminal(v)) {
      Rational d = rec.walk.up[v] - w.up[v];
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
    for (size_t c = 0; c < w.down[v].size(); ++c) {
      Rational d = rec.walk.down[v][c] - w.down[v][c];
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
  }
  Json out{{"max_transition_diff", to_double(worst)}, {"vertices", w.shape.size()}};
  std::ofstream f(out_path(dir, "duality.json"));
  f << out.dump(2) << "\n";
  std::cout << "duality roundtrip: max transition diff = " << to_double(worst) << "\n";
  return worst == 0 ? 0 : 1;
}

int run_doobnaim(int trees, int pairs, uint64_t seed, const std::string& dir) {
  Rng rng(seed, 0);
  double worst = 0;
  CsvWriter csv(out_path(dir, "doobnaim.csv"), "umk doobnaim v1",
                {"tree", "pair", "lhs", "rhs", "rel_diff"});
  for (int tr = 0; tr < trees; ++tr) {
    Walk<Rational> wq = random_conductance_walk(rng, 200);
    auto s = solve_walk(to_double_walk(wq));
    int nl = static_cast<int>(s.shape().leaves.size());
    for (int pr = 0; pr < pairs; ++pr) {
      std::vector<double> phi(nl), psi(nl);
      for (int l = 0; l < nl; ++l) {
        phi[l] = (rng.next() % 2) ? 1.0 : 0.0;
        psi[l] = (rng.next() % 2) ? 1.0 : 0.0;
      }
      auto res = doob_naim_check(s, phi, psi);
      double scale = std::max({1e-30, std::abs(res.lhs), std::abs(res.rhs)});
      double rel = res.diff / scale;
      worst = std::max(worst, rel);
      csv.row({double(tr), double(pr), res.lhs, res.rhs, rel});
    }
  }
  std::cout << "doobnaim: worst relative diff = " << worst << "\n";
  return worst <= 1e-8 ? 0 : 1;
}

int run_simulate(const ModelArgs& args, double t, long paths, uint64_t seed,
                 const std::string& dir) {
  BallTree tr = args.tree();
  HeatModel m(tr, args.sigma_spec());
  int x0 = tr.leaf_id(0);
  Empirical emp = sample_jump(m, x0, t, paths, seed);
  auto law = one_shot_law(m, x0, t);
  CsvWriter csv(out_path(dir, "simulate.csv"), "umk simulate v1",
                {"cell", "exact_p", "empirical_p", "stderr"});
  for (size_t i = 0; i < law.size(); ++i)
    csv.row({double(i), law[i], emp.probability[i], emp.std_error[i]});
  double tv = emp.tv_distance(law);
  // composition statistic: two t/2 steps against one t step
  Empirical two = sample_jump_chain(m, x0, t / 2, 2, paths, seed + 1);
  Empirical one = sample_jump(m, x0, t, paths, seed + 2);
  int dof = 0;
  double chi2 = chi2_two_sample(two, one, &dof);
  double chi2_cut = chi2_quantile(dof, 0.999);
  Json summary{{"tv_distance", tv},         {"paths", paths},
               {"seed", seed},              {"t", t},
               {"chi2_composition", chi2},  {"chi2_dof", dof},
               {"chi2_cut_999", chi2_cut}};
  std::ofstream f(out_path(dir, "simulate_summary.json"));
  f << summary.dump(2) << "\n";
  std::cout << "simulate: TV(empirical, exact) = " << tv << ", chi2(two half-steps, one step) = "
            << chi2 << " (dof " << dof << ", 99.9% cut " << chi2_cut << ")\n";
  return tv < 0.01 && chi2 < chi2_cut ? 0 : 1;
}

int run_padic_op(const std::string& x_lit, const std::string& y_lit) {
  PAdic x = PAdic::parse(x_lit), y = PAdic::parse(y_lit);
  PAdicOps ops = padic_ops(x, y);
  Json out{{"sum", ops.sum.to_string()},
           {"norm_x", ops.norm_x},
           {"norm_y", ops.norm_y},
           {"norm_sum", ops.norm_sum},
           {"valuation_x", ops.valuation_x},
           {"valuation_y", ops.valuation_y},
           {"distance", ops.distance}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"umk: isotropic Markov semigroups on ultra-metric spaces"};
  app.require_subcommand(1);

  ModelArgs margs;
  std::string t_spec = "1.0";
  std::string dir = out_dir();
  std::string envelope_family = "";
  std::string zp_spec, qp_spec, taib_spec, walk_file, x_lit, y_lit, green_config;
  double gamma = 1.0, dist = 1.0, t_one = 1.0;
  long paths = 100000;
  uint64_t seed = 1;
  bool roundtrip = false;
  std::string tree_kind = "random";
  int trees = 50, pairs = 10;
  std::string check_filter;

  auto add_common = [&](CLI::App* cmd) {
    margs.attach(cmd);
    cmd->add_option("--out", dir, "output directory (default $UMK_OUT or .)");
  };

  CLI::App* kernel = app.add_subcommand("kernel", "heat kernel grids as CSV");
  add_common(kernel);
  kernel->add_option("--t", t_spec, "time value or lo:hi:n log grid");
  kernel->add_option("--envelope", envelope_family, "also emit qp envelope columns");

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues with multiplicities");
  add_common(spectrum);
  spectrum->add_option("--zp", zp_spec, "Z_p model p=2,alpha=1,depth=4");

  CLI::App* green = app.add_subcommand("green", "Green function closed forms");
  green->add_option("--qp", qp_spec, "Q_p model p=2,alpha=0.5");
  green->add_option("--taibleson", taib_spec, "Taibleson model p=2,n=2,alpha=1");
  green->add_option("--dist", dist, "p-adic distance ||x - y||");
  green->add_option("--config", green_config, "JSON with {\"model_spec\": {\"model\": ...}}");
  green->add_option("--out", dir, "output directory");

  CLI::App* jump = app.add_subcommand("jump", "jump kernel table");
  add_common(jump);

  CLI::App* moments = app.add_subcommand("moments", "moment functionals");
  add_common(moments);
  moments->add_option("--gamma", gamma, "moment order");
  moments->add_option("--t", t_spec, "time grid lo:hi:n");

  CLI::App* envelope = app.add_subcommand("envelope", "kernel/envelope ratio band");
  add_common(envelope);
  envelope->add_option("--family", envelope_family, "qp | doubling")->required();
  envelope->add_option("--t", t_spec, "time grid lo:hi:n");

  CLI::App* walk = app.add_subcommand("walk", "solve a nearest-neighbour walk");
  walk->add_option("--walk", walk_file, "walk spec JSON");
  walk->add_option("--seed", seed, "random walk seed when no file is given");
  walk->add_option("--out", dir, "output directory");

  CLI::App* duality = app.add_subcommand("duality", "walk/boundary round trips");
  duality->add_flag("--roundtrip", roundtrip, "run the round-trip check");
  duality->add_option("--tree", tree_kind, "random (default)");
  duality->add_option("--seed", seed, "seed");
  duality->add_option("--out", dir, "output directory");

  CLI::App* doobnaim = app.add_subcommand("doobnaim", "Doob-Naim identity sweeps");
  doobnaim->add_option("--trees", trees, "number of random trees");
  doobnaim->add_option("--pairs", pairs, "indicator pairs per tree");
  doobnaim->add_option("--seed", seed, "seed");
  doobnaim->add_option("--out", dir, "output directory");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo vs exact kernels");
  add_common(simulate);
  simulate->add_option("--t", t_one, "time");
  simulate->add_option("--paths", paths, "number of paths");
  simulate->add_option("--seed", seed, "seed");

  CLI::App* padic_cmd = app.add_subcommand("padic", "p-adic arithmetic on literals");
  padic_cmd->add_option("--x", x_lit, "literal, e.g. 'p:2 val:-1 digits:101'")->required();
  padic_cmd->add_option("--y", y_lit, "second literal")->required();

  CLI::App* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--only", check_filter, "run a single criterion, e.g. C3");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*kernel) return run_kernel(margs, t_spec, dir, envelope_family);
    if (*spectrum) return run_spectrum(zp_spec, margs, dir);
    if (*green) return run_green(qp_spec, taib_spec, dist, green_config, dir);
    if (*jump) return run_jump(margs, dir);
    if (*moments) return run_moments(margs, gamma, t_spec, dir);
    if (*envelope) return run_envelope(margs, envelope_family, t_spec, dir);
    if (*walk) return run_walk(walk_file, seed, dir);
    if (*duality) return run_duality(roundtrip, seed, dir);
    if (*doobnaim) return run_doobnaim(trees, pairs, seed, dir);
    if (*simulate) return run_simulate(margs, t_one, paths, seed, dir);
    if (*padic_cmd) return run_padic_op(x_lit, y_lit);
    if (*check) return umk::acceptance::run_all(check_filter, std::cout);
  } catch (const umk::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
