// framelet: command line front end for the sampling/reconstruction library.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "framelet/bounds.hpp"
#include "framelet/experiment.hpp"
#include "framelet/perturbation.hpp"
#include "framelet/sampling_operator.hpp"
#include "framelet/trig_polynomial.hpp"

using namespace framelet;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

Vec parse_lambda(const std::string& text, int dim) {
  ExperimentSpec tmp;
  tmp.dim = dim;
  apply_settings(tmp, {{"lambda", text}});
  return tmp.lambda;
}

std::vector<Vec> read_points(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path + "'");
  std::vector<Vec> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw ValidationError(path + ":" + std::to_string(lineno) + ": not a number");
    if (row.empty()) continue;
    if (static_cast<int>(row.size()) != dim) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates");
    }
    Vec x(dim);
    for (int a = 0; a < dim; ++a) x(a) = row[static_cast<std::size_t>(a)];
    pts.push_back(x);
  }
  if (pts.empty()) throw ValidationError("points file '" + path + "' has no points");
  return pts;
}

int cmd_verify_mep(const std::vector<std::string>& files, int grid, double tol) {
  const MaskBundle bundle = files.size() == 1 ? read_mask_bundle(files.front()) : bundle_from_files(files);
  const MepReport r = verify_mep(bundle.a, bundle.a_dual, bundle.bs, bundle.bs_dual,
                                 CosetSet::dyadic(bundle.a.dim()), grid);
  std::cout << std::setprecision(6) << std::scientific;
  std::cout << "identity_residual " << r.identity_residual << "\n";
  for (std::size_t j = 0; j < r.coset_residuals.size(); ++j) {
    std::cout << "coset_residual[" << j + 1 << "] " << r.coset_residuals[j] << "  (as printed: "
              << r.coset_residuals_as_printed[j] << ")\n";
  }
  const bool ok = r.passes(tol);
  std::cout << (ok ? "MEP holds" : "MEP violated") << " (tol " << tol << ")\n";
  return ok ? 0 : kExitValidation;
}

int cmd_tail_bound(double s, int d, double m, double J, long oracle_R) {
  const double bound = tail_sum_bound(s, d, m, J);
  std::cout << std::setprecision(8);
  std::cout << "chat " << chat_constant(s, d) << "\n";
  std::cout << "bound " << bound << "\n";
  if (oracle_R > 0) {
    const TailOracle o = tail_sum_oracle(s, d, m, J, oracle_R);
    std::cout << "oracle " << o.value << "\n";
    std::cout << "remainder_bound " << o.remainder_bound << "\n";
    std::cout << "ratio " << o.value / bound << "\n";
  }
  return 0;
}

int cmd_rates(const RateParams& p, int N, const std::string& lambda_text, double norm_max_value) {
  const Vec lambda = parse_lambda(lambda_text, p.d);
  const double z = zeta(p);
  const RateValue r = theorem4_rate(p, N, lambda, norm_max_value);
  std::cout << std::setprecision(10);
  std::cout << "zeta " << z << "\n";
  std::cout << "uniform_term " << std::pow(p.m, -(p.sigma - p.s) * N) << "\n";
  std::cout << "perturbation_factor " << std::pow(p.m, -N * z) << "\n";
  std::cout << "rate " << r.value << "\n";
  if (!r.alpha_admissible) {
    std::cout << "warning: alpha = " << p.alpha << " is not below min(2s - d, 2) = " << std::min(2.0 * p.s - p.d, 2.0)
              << "\n";
  }
  if (!r.precondition_met) {
    std::cout << "warning: N = " << N << " is below the required scale " << r.required_N << "\n";
  }
  return 0;
}

struct ReconstructArgs {
  std::string target;
  std::string phi = "B3";
  int N = 0;
  int dim = 1;
  std::string jitter = "zero";
  std::string lambda = "0";
  double alpha = 0.5;
  std::uint64_t seed = 0;
  std::string points;
  std::string out;
};

int cmd_reconstruct(const ReconstructArgs& args) {
  const TargetFunction f = resolve_target(args.target, args.dim);
  const std::vector<Vec> pts = read_points(args.points, args.dim);

  Box domain{pts.front(), pts.front()};
  for (const Vec& x : pts) {
    domain.lo = domain.lo.cwiseMin(x);
    domain.hi = domain.hi.cwiseMax(x);
  }
  const ReconstructionConfig cfg{args.N, domain, parse_refinable(args.phi, args.dim)};
  cfg.validate();
  const PerturbationModel model(parse_lambda(args.lambda, args.dim), args.alpha,
                                JitterDistribution::parse(args.jitter), args.seed);
  const PerturbationSequence eps = generate(model, index_box(cfg), 0);

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary);
    if (!file) throw IoError("cannot open '" + args.out + "' for writing");
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  out << std::setprecision(17);
  out << (args.dim == 1 ? "x,f,recon,err\n" : "x,y,f,recon,err\n");
  for (const Vec& x : pts) {
    const double fx = f(x);
    const double r = perturbed_reconstruct(f, cfg, eps, x);
    for (int a = 0; a < args.dim; ++a) out << x(a) << ',';
    out << fx << ',' << r << ',' << std::abs(fx - r) << '\n';
  }
  if (!out) throw IoError("failed writing reconstruction output");
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::map<std::string, std::string> flags;
};

int cmd_experiment(int dim, const ExperimentArgs& args) {
  ExperimentSpec spec = dim == 1 ? paper_1d_spec() : paper_2d_spec();
  spec.output_dir = "results";
  if (!args.config.empty()) apply_settings(spec, read_config_file(args.config));
  if (const char* env = std::getenv("FRAMELET_SEED"); env != nullptr && *env != '\0') {
    apply_settings(spec, {{"seed", env}});
  }
  apply_settings(spec, args.flags);

  const ErrorReport report = run_experiment(spec);
  std::cout << report.csv();
  std::cout << "# seed " << report.seed << "  spec_hash " << std::hex << std::setw(16) << std::setfill('0')
            << report.spec_hash << std::dec << "\n";
  if (report.slope) {
    std::cout << "# slope " << std::setprecision(6) << *report.slope << "\n";
  } else {
    std::cout << "# slope " << report.slope_note << "\n";
  }
  for (const std::string& line : report.budget_log) std::cout << "# budget " << line << "\n";
  if (!spec.output_dir.empty()) std::cout << "# wrote " << (spec.output_dir / (spec.name + ".csv")).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, reconstruction and framelet-mask tools"};
  app.require_subcommand(1);

  auto* mep = app.add_subcommand("verify-mep", "Check the mixed extension principle for a mask bundle");
  std::vector<std::string> mask_files;
  int mep_grid = 256;
  double mep_tol = 1e-12;
  mep->add_option("maskfiles", mask_files, "One bundle file, or a, a_dual, b, b_dual, ... files")->required();
  mep->add_option("--grid", mep_grid, "Grid points per dimension")->capture_default_str();
  mep->add_option("--tol", mep_tol, "Residual tolerance")->capture_default_str();

  auto* tail = app.add_subcommand("tail-bound", "Lattice tail bound and brute-force oracle");
  double t_s = 1.0, t_m = 2.0, t_J = 0.0;
  int t_d = 1;
  long t_R = 0;
  tail->add_option("--s", t_s)->required();
  tail->add_option("--d", t_d)->required();
  tail->add_option("--m", t_m)->capture_default_str();
  tail->add_option("--J", t_J)->required();
  tail->add_option("--oracle", t_R, "Brute-force radius R");

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct a target at given points");
  ReconstructArgs ra;
  rec->add_option("--target", ra.target, "paper-1d, paper-2d or a formula in x [, y]")->required();
  rec->add_option("--phi", ra.phi, "B<n> or B<n>xB<m>")->capture_default_str();
  rec->add_option("--N", ra.N)->required();
  rec->add_option("--dim", ra.dim)->capture_default_str();
  rec->add_option("--jitter", ra.jitter, "zero | gaussian:<sigma> | uniform:<a>")->capture_default_str();
  rec->add_option("--lambda", ra.lambda)->capture_default_str();
  rec->add_option("--alpha", ra.alpha)->capture_default_str();
  rec->add_option("--seed", ra.seed)->capture_default_str();
  rec->add_option("--points", ra.points, "File with one point per line")->required();
  rec->add_option("--out", ra.out, "Output CSV (default stdout)");

  ExperimentArgs ea;
  std::vector<CLI::App*> experiments;
  for (const char* name : {"experiment-1d", "experiment-2d"}) {
    auto* ex = app.add_subcommand(name, "Monte-Carlo convergence experiment");
    ex->add_option("--config", ea.config, "key=value config file");
    for (const char* key : {"scales", "trials", "seed", "out", "sigma", "lambda", "jitter", "target", "phi",
                            "alpha", "budget", "grid", "name"}) {
      ex->add_option_function<std::string>(std::string("--") + key,
                                           [&ea, key](const std::string& v) { ea.flags[key] = v; });
    }
    experiments.push_back(ex);
  }

  auto* rates = app.add_subcommand("rates", "Rate exponent and perturbation rate factor");
  RateParams rp;
  int r_N = 0;
  std::string r_lambda = "0";
  double r_norm_max = 0.0;
  rates->add_option("--s", rp.s)->required();
  rates->add_option("--sigma", rp.sigma)->required();
  rates->add_option("--alpha", rp.alpha)->required();
  rates->add_option("--d", rp.d)->required();
  rates->add_option("--N", r_N)->required();
  rates->add_option("--m", rp.m)->capture_default_str();
  rates->add_option("--lambda", r_lambda)->capture_default_str();
  rates->add_option("--norm-max", r_norm_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    if (dynamic_cast<const CLI::RequiredError*>(&e) != nullptr || dynamic_cast<const CLI::ExtrasError*>(&e)) {
      std::cerr << app.help();
    }
    return kExitValidation;
  }

  try {
    if (mep->parsed()) return cmd_verify_mep(mask_files, mep_grid, mep_tol);
    if (tail->parsed()) return cmd_tail_bound(t_s, t_d, t_m, t_J, t_R);
    if (rec->parsed()) return cmd_reconstruct(ra);
    if (experiments[0]->parsed()) return cmd_experiment(1, ea);
    if (experiments[1]->parsed()) return cmd_experiment(2, ea);
    if (rates->parsed()) return cmd_rates(rp, r_N, r_lambda, r_norm_max);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::cerr << app.help();
  return kExitValidation;
}
