#include "framelet/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "framelet/bounds.hpp"
#include "framelet/formula.hpp"

namespace framelet {
namespace {

double b2(double t) { return eval_bspline(2, t); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("setting '" + key + "' expects a number, got '" + text + "'");
}

long long to_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("setting '" + key + "' expects an integer, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::ostringstream precise_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  return os;
}

struct Fnv1a {
  std::uint64_t state = 14695981039346656037ull;
  void add(const std::string& s) {
    for (unsigned char c : s) {
      state ^= c;
      state *= 1099511628211ull;
    }
    state ^= 0xff;
    state *= 1099511628211ull;
  }
};

}  // namespace

TargetFunction builtin_target_1d() {
  TargetFunction f;
  f.dim = 1;
  f.name = "paper-1d";
  f.sobolev_hint = 1.49;
  f.eval = [](const Vec& v) {
    const double x = v(0);
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    auto bump = [x](double c) { return std::cos((x - c) * (x - c)) * b2(x - c); };
    return sinc + b2(x - 2.0) / 3.0 - bump(3.0) / 6.0 + bump(4.0) / 2.0 - bump(5.0) / 2.0;
  };
  return f;
}

TargetFunction builtin_target_2d() {
  TargetFunction f;
  f.dim = 2;
  f.name = "paper-2d";
  f.sobolev_hint = 1.49;
  f.eval = [](const Vec& v) {
    const double x = v(0), y = v(1);
    return 1.0 / ((50.0 + x * x) * (20.0 + y * y)) + b2(x) * b2(y);
  };
  return f;
}

TargetFunction resolve_target(const std::string& id, int dim) {
  require_dim(dim);
  if (id == "paper-1d" || id == "paper-2d") {
    TargetFunction f = id == "paper-1d" ? builtin_target_1d() : builtin_target_2d();
    if (f.dim != dim) throw ValidationError("target '" + id + "' is not " + std::to_string(dim) + "-dimensional");
    return f;
  }
  const Formula formula = Formula::parse(id, dim);
  TargetFunction f;
  f.dim = dim;
  f.name = id;
  f.eval = [formula](const Vec& x) { return formula(x); };
  return f;
}

RefinableFunction parse_refinable(const std::string& text, int dim) {
  require_dim(dim);
  auto order_of = [&](const std::string& part) {
    if (part.size() < 2 || (part[0] != 'B' && part[0] != 'b')) {
      throw ValidationError("generator spec must look like 'B3' or 'B3xB3', got '" + text + "'");
    }
    const long long n = to_integer("phi", part.substr(1));
    if (n < 1 || n > 16) throw ValidationError("B-spline order must lie in 1..16");
    return static_cast<int>(n);
  };
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    const int n = order_of(text);
    return dim == 1 ? RefinableFunction::bspline(n) : RefinableFunction::tensor_bspline(n, n);
  }
  if (dim != 2) throw ValidationError("tensor generator '" + text + "' needs dimension 2");
  return RefinableFunction::tensor_bspline(order_of(text.substr(0, x)), order_of(text.substr(x + 1)));
}

std::vector<int> parse_scales(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const long long a = to_integer("scales", trim(text.substr(0, dots)));
    const long long b = to_integer("scales", trim(text.substr(dots + 2)));
    if (b < a) throw ValidationError("scale range '" + text + "' is empty");
    for (long long n = a; n <= b; ++n) out.push_back(static_cast<int>(n));
  } else {
    for (const std::string& part : split(text, ',')) out.push_back(static_cast<int>(to_integer("scales", part)));
  }
  if (out.empty()) throw ValidationError("no scales given");
  return out;
}

void ExperimentSpec::validate() const {
  require_dim(dim);
  if (scales.empty()) throw ValidationError("experiment needs at least one scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] < 0) throw ValidationError("scales must be nonnegative");
    if (i > 0 && scales[i] <= scales[i - 1]) throw ValidationError("scales must be strictly increasing");
    if (scales[i] > 20) throw ValidationError("scale above 20 is out of range");
  }
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (lambda.size() != dim) throw ValidationError("lambda has wrong dimension");
  if (domain.dim() != dim || domain.empty()) throw ValidationError("experiment domain is invalid");
  if (grid_nodes < 2) throw ValidationError("error grid needs at least 2 nodes per axis");
  if (budget_seconds < 0.0) throw ValidationError("budget must be nonnegative");
  if (parse_refinable(phi, dim).dim() != dim) throw ValidationError("generator has wrong dimension");
  PerturbationModel(lambda, alpha, jitter, seed);
}

std::uint64_t ExperimentSpec::hash() const {
  Fnv1a h;
  std::ostringstream os = precise_stream();
  os << name << '|' << target << '|' << phi << '|' << dim << '|' << trials << '|' << alpha << '|'
     << jitter.to_string() << '|' << grid_nodes << '|';
  for (int n : scales) os << n << ',';
  os << '|';
  for (int a = 0; a < lambda.size(); ++a) os << lambda(a) << ',';
  os << '|';
  for (int a = 0; a < domain.dim(); ++a) os << domain.lo(a) << ',' << domain.hi(a) << ',';
  h.add(os.str());
  return h.state;
}

ExperimentSpec paper_1d_spec() {
  ExperimentSpec spec;
  spec.name = "experiment-1d";
  spec.target = "paper-1d";
  spec.phi = "B3";
  spec.dim = 1;
  spec.scales = parse_scales("1..8");
  spec.trials = 50;
  spec.lambda = vec1(1.0);
  spec.jitter = JitterDistribution::gaussian(1.0);
  spec.domain = Box{vec1(-100.0), vec1(100.0)};
  spec.grid_nodes = 20001;
  return spec;
}

ExperimentSpec paper_2d_spec() {
  ExperimentSpec spec;
  spec.name = "experiment-2d";
  spec.target = "paper-2d";
  spec.phi = "B3";
  spec.dim = 2;
  spec.scales = parse_scales("1..6");
  spec.trials = 20;
  spec.lambda = vec2(0.5, 0.5);
  spec.jitter = JitterDistribution::gaussian(1.0);
  spec.domain = Box{vec2(-2.0, -2.0), vec2(2.0, 2.0)};
  spec.grid_nodes = 501;
  return spec;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_settings(ExperimentSpec& spec, const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "name") {
      spec.name = value;
    } else if (key == "target") {
      spec.target = value;
    } else if (key == "phi") {
      spec.phi = value;
    } else if (key == "scales") {
      spec.scales = parse_scales(value);
    } else if (key == "trials") {
      spec.trials = static_cast<int>(to_integer(key, value));
    } else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw ValidationError("seed must be nonnegative");
      spec.seed = static_cast<std::uint64_t>(s);
    } else if (key == "lambda") {
      const auto parts = split(value, ',');
      if (parts.size() != 1 && parts.size() != static_cast<std::size_t>(spec.dim)) {
        throw ValidationError("lambda needs 1 or " + std::to_string(spec.dim) + " components");
      }
      spec.lambda = Vec(spec.dim);
      for (int a = 0; a < spec.dim; ++a) spec.lambda(a) = to_double(key, parts[parts.size() == 1 ? 0 : a]);
    } else if (key == "alpha") {
      spec.alpha = to_double(key, value);
    } else if (key == "sigma") {
      const double sigma = to_double(key, value);
      spec.jitter = sigma == 0.0 ? JitterDistribution::zero() : JitterDistribution::gaussian(sigma);
    } else if (key == "jitter") {
      spec.jitter = JitterDistribution::parse(value);
    } else if (key == "out") {
      spec.output_dir = value;
    } else if (key == "budget") {
      spec.budget_seconds = to_double(key, value);
    } else if (key == "grid") {
      spec.grid_nodes = static_cast<int>(to_integer(key, value));
    } else {
      throw ValidationError("unknown setting '" + key + "'");
    }
  }
}

std::string ErrorReport::csv() const {
  std::ostringstream os = precise_stream();
  os << "N,max_err,mean_err,std_err\n";
  for (const ErrorRow& r : rows) os << r.N << ',' << r.max_err << ',' << r.mean_err << ',' << r.std_err << '\n';
  return os.str();
}

ErrorReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const TargetFunction f = resolve_target(spec.target, spec.dim);
  const RefinableFunction phi = parse_refinable(spec.phi, spec.dim);
  const PerturbationModel model(spec.lambda, spec.alpha, spec.jitter, spec.seed);
  const PointGrid grid = tensor_grid(spec.domain, spec.grid_nodes);

  ErrorReport report;
  report.seed = spec.seed;
  report.spec_hash = spec.hash();

  double last_per_trial = 0.0;
  int last_N = -1;
  for (int N : spec.scales) {
    int trials = spec.trials;
    if (spec.budget_seconds > 0.0 && last_N >= 0) {
      const double growth = std::pow(2.0, spec.dim * (N - last_N));
      const double projected = last_per_trial * growth * trials;
      if (projected > spec.budget_seconds) {
        const int reduced = std::max(1, static_cast<int>(spec.budget_seconds / (last_per_trial * growth)));
        if (reduced < trials) {
          std::ostringstream note = precise_stream();
          note << std::setprecision(4) << "N=" << N << ": trials " << trials << " -> " << reduced << " (projected "
               << projected << " s > budget " << spec.budget_seconds << " s)";
          report.budget_log.push_back(note.str());
          trials = reduced;
        }
      }
    }

    ReconstructionConfig cfg{N, spec.domain, phi};
    const auto start = std::chrono::steady_clock::now();
    const TrialStats stats = run_trials(f, cfg, model, trials, grid);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    last_per_trial = elapsed / trials;
    last_N = N;

    report.rows.push_back({N, stats.max, stats.mean, stats.stddev, stats.median(), trials});
  }

  if (report.rows.size() < 3) {
    report.slope_note = "undefined: fewer than 3 scales";
  } else {
    std::vector<std::pair<double, double>> points;
    bool noisy = false;
    for (const ErrorRow& r : report.rows) {
      if (!(r.max_err > kErrorNoiseFloor)) noisy = true;
      points.emplace_back(r.N, r.max_err);
    }
    if (noisy) {
      report.slope_note = "undefined: errors at rounding level";
    } else {
      report.slope = decay_fit(points, 2.0);
      report.slope_note = "fitted";
    }
  }

  if (!spec.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + spec.output_dir.string() + "': " + ec.message());
    write_file(spec.output_dir / (spec.name + ".csv"), report.csv());

    std::ostringstream plot = precise_stream();
    plot << "# N log2_max_err log2_mean_err\n";
    for (const ErrorRow& r : report.rows) {
      plot << r.N << ' ' << (r.max_err > 0.0 ? std::log2(r.max_err) : -INFINITY) << ' '
           << (r.mean_err > 0.0 ? std::log2(r.mean_err) : -INFINITY) << '\n';
    }
    write_file(spec.output_dir / (spec.name + "_plot.dat"), plot.str());

    std::ostringstream meta = precise_stream();
    meta << "name=" << spec.name << "\nseed=" << report.seed << "\nspec_hash=" << std::hex << std::setw(16)
         << std::setfill('0') << report.spec_hash << std::dec << "\ntarget=" << spec.target << "\nphi=" << spec.phi
         << "\njitter=" << spec.jitter.to_string() << "\nslope=";
    if (report.slope) {
      meta << *report.slope;
    } else {
      meta << "none";
    }
    meta << "\nslope_note=" << report.slope_note << "\n";
    for (const ErrorRow& r : report.rows) meta << "trials[N=" << r.N << "]=" << r.trials << "\n";
    for (const std::string& line : report.budget_log) meta << "budget_reduction=" << line << "\n";
    write_file(spec.output_dir / (spec.name + "_meta.txt"), meta.str());
  }
  return report;
}

}  // namespace framelet
