// memslab command line front end.
//
// Subcommands: report-nonlinearity, branch, stability, verify, explicit.
// Global flags: --config PATH, --out DIR, --tol X, --threads N. The output
// directory defaults to $MEMS_BRANCH_OUT, then the current directory.
// Exit codes: 0 success, 1 usage/config error, 2 verification failure,
// 3 solver failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "memslab/estimates.hpp"
#include "memslab/nonlinearity.hpp"
#include "memslab/numerics.hpp"
#include "memslab/radial_solver.hpp"
#include "memslab/report_io.hpp"
#include "memslab/spectral.hpp"

namespace {

namespace nonlin = memslab::nonlin;
namespace radial = memslab::radial;
namespace spectral = memslab::spectral;
namespace est = memslab::est;
namespace io = memslab::io;
namespace num = memslab::num;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitSolver = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family;
  double p = 2.0;
  double c = 1.0;
  double a = 1.2;
  double b = 1.8;
  double eps = 2.0;
  std::string table;  // custom-table CSV path

  double n = 3.0;
  int points = 150;
  double s_min = 1e-3;
  double s_max = 1.0 - 1e-4;
  std::optional<double> s;  // single profile for `stability`

  double tol = 1e-10;
  int threads = 1;
  std::string out;
  std::string mode = "theorem";  // theorem | explore
  std::vector<std::string> tags;
  std::optional<double> beta;
};

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  auto get = [&](const char* key, auto& slot) {
    if (doc.contains(key)) slot = doc[key].template get<std::decay_t<decltype(slot)>>();
  };
  get("family", cfg.family);
  get("p", cfg.p);
  get("c", cfg.c);
  get("a", cfg.a);
  get("b", cfg.b);
  get("eps", cfg.eps);
  get("table", cfg.table);
  get("n", cfg.n);
  get("points", cfg.points);
  get("s_min", cfg.s_min);
  get("s_max", cfg.s_max);
  get("tol", cfg.tol);
  get("threads", cfg.threads);
  get("out", cfg.out);
  get("mode", cfg.mode);
  if (doc.contains("s")) cfg.s = doc["s"].get<double>();
  if (doc.contains("beta")) cfg.beta = doc["beta"].get<double>();
  if (doc.contains("tags")) cfg.tags = doc["tags"].get<std::vector<std::string>>();
}

std::string output_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("MEMS_BRANCH_OUT"); env && *env)
    return env;
  return ".";
}

nonlin::Nonlinearity make_nonlinearity(const RunConfig& cfg) {
  const std::string& fam = cfg.family;
  if (fam.empty()) throw ConfigError("no nonlinearity family selected");
  try {
    if (fam == "power") return nonlin::Nonlinearity::power(cfg.p);
    if (fam == "exponential") return nonlin::Nonlinearity::exponential();
    if (fam == "mems") return nonlin::Nonlinearity::mems();
    if (fam == "scaled-power")
      return nonlin::Nonlinearity::scaled_power(cfg.p, cfg.c);
    if (fam == "constant") return nonlin::Nonlinearity::constant(cfg.c);
    if (fam == "castorina")
      return nonlin::Nonlinearity::castorina(cfg.a, cfg.b, cfg.eps);
    if (fam == "custom-table") {
      if (cfg.table.empty())
        throw ConfigError("custom-table requires --table PATH");
      return nonlin::Nonlinearity::custom_table_csv(cfg.table);
    }
  } catch (const num::DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown family: " + fam);
}

num::Tolerance make_tol(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.tol > 1e-2)
    throw ConfigError("tolerance must lie in (0, 1e-2]");
  num::Tolerance t;
  t.abs_tol = cfg.tol;
  t.rel_tol = cfg.tol;
  return t;
}

radial::SGrid make_grid(const RunConfig& cfg) {
  if (cfg.points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(cfg.s_min > 0.0) || !(cfg.s_min < cfg.s_max) || !(cfg.s_max < 1.0))
    throw ConfigError("s-grid must satisfy 0 < s_min < s_max < 1");
  if (cfg.s_max > 1.0 - 1e-6)
    throw ConfigError("s-grid floor 1-s_max below 1e-6 is not supported");
  radial::SGrid g;
  g.count = cfg.points;
  g.s_min = cfg.s_min;
  g.s_max = cfg.s_max;
  return g;
}

int cmd_report_nonlinearity(const RunConfig& cfg) {
  nonlin::Nonlinearity nl = make_nonlinearity(cfg);
  nonlin::CRCertificate cert = nonlin::certify(nl);
  nonlin::RelationDefects defects = nonlin::relation_check(nl);
  const std::string path = output_dir(cfg) + "/nonlinearity.json";
  io::write_nonlinearity_json(nl, cert, defects, path);

  std::printf("%s\n", nl.tag().c_str());
  std::printf("  gamma in [%.6g, %.6g]\n", cert.gamma_lo, cert.gamma_hi);
  std::printf("  q     in [%.6g, %.6g]\n", cert.q_lo, cert.q_hi);
  std::printf("  m     in [%.6g, %.6g]\n", cert.m_lo, cert.m_hi);
  if (cert.cr_condition_holds) {
    std::printf("  CR condition holds: theta=%.6g K=%s K~=%s\n", cert.theta,
                cert.K_unbounded ? "unbounded" : io::format_sig15(cert.K).c_str(),
                cert.K_tilde_unbounded
                    ? "unbounded"
                    : io::format_sig15(cert.K_tilde).c_str());
  } else {
    std::printf("  CR condition fails (gamma_lo <= 1)\n");
  }
  if (nl.family() == nonlin::Family::power ||
      nl.family() == nonlin::Family::mems ||
      nl.family() == nonlin::Family::scaled_power)
    std::printf("  N(p) = %.6g\n", nonlin::np_threshold(nl.param_p()));
  if (cert.m_lo >= 1.0 && cert.gamma_lo > 1.0)
    std::printf("  N# = %.6g\n",
                nonlin::castorina_threshold(cert.gamma_lo, cert.m_lo));
  std::printf("  wrote %s\n", path.c_str());
  return kExitOk;
}

int cmd_branch(const RunConfig& cfg) {
  nonlin::Nonlinearity nl = make_nonlinearity(cfg);
  if (!(cfg.n >= 1.0)) throw ConfigError("dimension must satisfy n >= 1");
  radial::ProfileOptions opt;
  opt.tol = make_tol(cfg);
  radial::Branch br =
      radial::solve_branch(nl, cfg.n, make_grid(cfg), opt, cfg.threads);
  const bool singular_extremal =
      nl.is_singular() && (1.0 - br.s_star) <= 1e-3;
  const std::string dir = output_dir(cfg);
  io::write_branch_csv(br, dir + "/branch.csv");
  io::write_branch_json(br, singular_extremal, dir + "/branch.json");
  std::printf("%s n=%g: %zu points, lambda*=%.10g at s=%.10g%s%s\n",
              br.tag.c_str(), br.n, br.points.size(), br.lambda_star,
              br.s_star, br.has_interior_fold ? " (interior fold)" : "",
              singular_extremal ? " (singular extremal)" : "");
  std::printf("  wrote %s/branch.csv, %s/branch.json\n", dir.c_str(),
              dir.c_str());
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg) {
  nonlin::Nonlinearity nl = make_nonlinearity(cfg);
  if (!(cfg.n >= 1.0)) throw ConfigError("dimension must satisfy n >= 1");
  radial::ProfileOptions opt;
  opt.tol = make_tol(cfg);
  spectral::SpectralOptions sopt;
  sopt.tol = opt.tol;
  const std::string dir = output_dir(cfg);

  double s_report;
  if (cfg.s) {
    if (!(*cfg.s > 0.0) || !(*cfg.s < 1.0))
      throw ConfigError("profile parameter s must lie in (0, 1)");
    s_report = *cfg.s;
    radial::RadialProfile prof = radial::solve_profile(nl, s_report, cfg.n, opt);
    spectral::SpectralResult res = spectral::rayleigh_min(nl, prof, sopt);
    io::write_spectral_json(res, s_report, prof.lambda, cfg.n,
                            dir + "/spectral.json");
    std::printf("%s n=%g s=%.10g: mu1 = %.10g +/- %.2g%s\n", nl.tag().c_str(),
                cfg.n, s_report, res.mu1, res.error_bar,
                res.truncated ? " (potential truncated)" : "");
    std::printf("  wrote %s/spectral.json\n", dir.c_str());
    return kExitOk;
  }

  radial::Branch br =
      radial::solve_branch(nl, cfg.n, make_grid(cfg), opt, cfg.threads);
  spectral::annotate_branch(nl, br, opt, sopt, cfg.threads);
  io::write_branch_csv(br, dir + "/branch.csv");
  s_report = br.s_star;
  radial::RadialProfile prof = radial::solve_profile(nl, s_report, cfg.n, opt);
  spectral::SpectralResult res = spectral::rayleigh_min(nl, prof, sopt);
  io::write_spectral_json(res, s_report, prof.lambda, cfg.n,
                          dir + "/spectral.json");
  std::printf("%s n=%g: annotated %zu points; at s*=%.10g mu1 = %.10g\n",
              nl.tag().c_str(), cfg.n, br.points.size(), s_report, res.mu1);
  std::printf("  wrote %s/branch.csv, %s/spectral.json\n", dir.c_str(),
              dir.c_str());
  return kExitOk;
}

const std::map<std::string,
               est::EstimateReport (*)(const est::StableBranch&)>&
simple_verifiers() {
  static const std::map<std::string,
                        est::EstimateReport (*)(const est::StableBranch&)>
      table = {
          {"interior-linf", est::verify_interior_linf},
          {"global-linf", est::verify_global_linf},
          {"w12", est::verify_w12},
          {"morrey", est::verify_morrey},
          {"nedev", est::verify_nedev_yezhou},
      };
  return table;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.tags.empty()) throw ConfigError("verify requires --tags");
  if (cfg.mode != "theorem" && cfg.mode != "explore")
    throw ConfigError("mode must be 'theorem' or 'explore'");
  const std::set<std::string> known = {"interior-linf", "global-linf",
                                      "interior-lp",   "global-lp",
                                      "w12",           "morrey",
                                      "nedev"};
  for (const auto& tag : cfg.tags)
    if (!known.count(tag)) throw ConfigError("unknown estimate tag: " + tag);

  nonlin::Nonlinearity nl = make_nonlinearity(cfg);
  if (!(cfg.n >= 1.0)) throw ConfigError("dimension must satisfy n >= 1");
  for (const auto& tag : cfg.tags) {
    if (tag == "morrey" && cfg.n < 3.0)
      throw ConfigError("morrey estimate requires n >= 3");
    if (tag == "global-lp" && !nl.is_convex())
      throw ConfigError("global-lp estimate requires a convex nonlinearity");
  }

  radial::ProfileOptions opt;
  opt.tol = make_tol(cfg);
  est::StableBranch sb =
      est::stable_branch(nl, cfg.n, make_grid(cfg), opt, cfg.threads);

  est::LpParams lp;
  lp.beta = cfg.beta;

  const std::string dir = output_dir(cfg);
  bool all_bounded = true;
  for (const auto& tag : cfg.tags) {
    est::EstimateReport rep;
    if (auto it = simple_verifiers().find(tag); it != simple_verifiers().end())
      rep = it->second(sb);
    else if (tag == "interior-lp")
      rep = est::verify_interior_lp(sb, lp);
    else
      rep = est::verify_global_lp(sb, lp);
    io::write_estimate_json(rep, dir + "/verify_" + tag + ".json");
    io::write_estimate_csv(rep, dir + "/verify_" + tag + ".csv");
    std::printf("%-14s %-13s max ratio %.6g\n", tag.c_str(),
                est::verdict_name(rep.verdict).c_str(), rep.max_ratio);
    if (rep.verdict != est::Verdict::bounded) all_bounded = false;
  }
  if (cfg.mode == "explore") return kExitOk;
  return all_bounded ? kExitOk : kExitVerify;
}

int cmd_explicit(const RunConfig& cfg) {
  if (!(cfg.p > 0.0)) throw ConfigError("explicit profile requires p > 0");
  if (!(cfg.n >= 2.0)) throw ConfigError("explicit profile requires n >= 2");
  spectral::ExplicitStability st =
      spectral::explicit_singular_stability(cfg.p, cfg.n);
  radial::RadialProfile prof = radial::explicit_profile(cfg.p, cfg.n);
  std::printf("u = 1 - r^(2/(1+p)), p=%g, n=%g\n", cfg.p, cfg.n);
  std::printf("  classification: %s (margin %.6g)\n",
              st.stable ? "stable" : "unstable", st.margin);
  std::printf("  N(p) = %.10g\n", nonlin::np_threshold(cfg.p));
  std::printf("  coefficient c(p,n) = %.10g, lambda = 1\n",
              radial::explicit_coefficient(cfg.p, cfg.n));
  std::printf("  max ODE residual = %.3g\n", prof.residual);
  if (cfg.p < 1.0)
    std::printf("  note: the primitive F stays finite at the singularity "
                "(integrable tail, p < 1)\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // Config file values become defaults; explicit flags override them.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], cfg);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
      }
    }
  }

  CLI::App app{"memslab: radial branches, spectra, and estimate checks for "
               "-Delta u = lambda f(u) on the unit ball"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--tol", cfg.tol, "solver tolerance");
  app.add_option("--threads", cfg.threads, "worker threads");

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family,
                    "power|exponential|mems|scaled-power|constant|castorina|"
                    "custom-table");
    sub->add_option("--p", cfg.p, "power exponent");
    sub->add_option("--c", cfg.c, "scale factor");
    sub->add_option("--a", cfg.a, "oscillation low value");
    sub->add_option("--b", cfg.b, "oscillation high value");
    sub->add_option("--eps", cfg.eps, "oscillation phase rate");
    sub->add_option("--table", cfg.table, "CSV of (t, f) for custom-table");
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "space dimension");
    sub->add_option("--points", cfg.points, "s-grid size");
    sub->add_option("--s-min", cfg.s_min, "smallest center value");
    sub->add_option("--s-max", cfg.s_max, "largest center value");
  };

  CLI::App* rep = app.add_subcommand("report-nonlinearity",
                                     "certificate and growth quotients");
  add_family(rep);

  CLI::App* branch = app.add_subcommand("branch", "sweep the solution branch");
  add_family(branch);
  add_sweep(branch);

  CLI::App* stab = app.add_subcommand("stability",
                                      "first eigenvalue along the branch");
  add_family(stab);
  add_sweep(stab);
  double s_flag = -1.0;
  CLI::Option* s_opt = stab->add_option("--s", s_flag, "single center value");

  CLI::App* verify = app.add_subcommand("verify", "check a priori estimates");
  add_family(verify);
  add_sweep(verify);
  std::string tags_csv;
  verify->add_option("--tags", tags_csv, "comma-separated estimate tags");
  verify->add_option("--mode", cfg.mode, "theorem|explore");
  double beta_flag = -1.0;
  CLI::Option* beta_opt =
      verify->add_option("--beta", beta_flag, "Lp interpolation parameter");

  CLI::App* expl = app.add_subcommand("explicit",
                                      "explicit singular profile report");
  expl->add_option("--p", cfg.p, "power exponent");
  expl->add_option("--n", cfg.n, "space dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (s_opt->count() > 0) cfg.s = s_flag;
  if (beta_opt->count() > 0) cfg.beta = beta_flag;
  if (!tags_csv.empty()) {
    cfg.tags.clear();
    std::stringstream ss(tags_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.tags.push_back(item);
  }

  try {
    if (rep->parsed()) return cmd_report_nonlinearity(cfg);
    if (branch->parsed()) return cmd_branch(cfg);
    if (stab->parsed()) return cmd_stability(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (expl->parsed()) return cmd_explicit(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const num::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const radial::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  } catch (const num::NumericalError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitUsage;
}
