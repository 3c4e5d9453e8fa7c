#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfrac/engine.hpp"
#include "cfrac/error.hpp"
#include "cfrac/value_regions.hpp"
#include "wire.hpp"

namespace cfrac::cli {

namespace {

using wire::json;

double default_slack() {
  if (const char* env = std::getenv("CFRAC_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v >= 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultSlack;
}

struct SeedOptions {
  double re = 0.0;
  double im = 0.0;
  bool inf = false;

  ExtendedComplex point() const {
    return inf ? ExtendedComplex::infinity() : ExtendedComplex(Complex(re, im));
  }
  json echo() const { return wire::to_json(point()); }
};

void add_seed_options(CLI::App* cmd, SeedOptions& seed) {
  cmd->add_option("--w-re", seed.re, "Real part of the seed w");
  cmd->add_option("--w-im", seed.im, "Imaginary part of the seed w");
  cmd->add_flag("--w-inf", seed.inf, "Use w = infinity");
}

Theorem parse_theorem(const std::string& s) {
  return s == "origin" ? Theorem::kOriginDisk : Theorem::kShiftedDisk;
}

Target parse_target(const std::string& s) {
  if (s == "reverse") return Target::kOddReverse;
  if (s == "tails") return Target::kEvenTails;
  return Target::kEvenConvergents;
}

struct LoadedSpec {
  json raw;
  ElementSequence seq;
};

LoadedSpec load_spec(const std::string& path) {
  json raw = wire::load_json_file(path);
  ElementSequence seq = wire::sequence_from_json(raw);
  return {std::move(raw), std::move(seq)};
}

// Half-angle used by the origin-disk path: the declared sector when given,
// else the smallest sector holding every element.
double working_theta(const ElementSequence& seq) {
  if (seq.declared_sector()) return seq.declared_sector()->half_angle();
  return max_element_angle(seq);
}

std::size_t pair_count_for(const ElementSequence& seq, Target target, std::optional<std::size_t> pairs) {
  if (target == Target::kEvenTails && pairs) return *pairs;
  return seq.count() / 2;
}

double minimal_radius(const ElementSequence& seq, Theorem theorem, Target target, std::size_t pairs) {
  if (pairs < 1 || 2 * pairs > seq.count()) {
    throw Error(ErrorCode::kInvalidCertificateRequest, "need 1 <= N and 2N <= count");
  }
  PairedElements all = paired_elements(seq, target);
  all.ps.resize(pairs);
  all.qs.resize(pairs);
  if (theorem == Theorem::kOriginDisk) return origin_disk_constant(all.ps, all.qs, working_theta(seq));
  return shifted_disk_constant(all.ps, all.qs);
}

ValueRegion make_region(Theorem theorem, double radius) {
  if (theorem == Theorem::kOriginDisk) return OriginDisk{radius};
  return ShiftedDisk{radius};
}

CertifyOptions certify_options(const ElementSequence& seq, Theorem theorem, double slack) {
  CertifyOptions options;
  options.slack = slack;
  if (theorem == Theorem::kOriginDisk || seq.declared_sector()) options.theta = working_theta(seq);
  return options;
}

void write_csv_number(std::ostream& os, double v) { os << std::setprecision(17) << v; }

std::ofstream open_csv(const std::string& path) {
  std::ofstream csv(path);
  if (!csv) throw Error(ErrorCode::kDomain, "cannot open CSV output " + path);
  return csv;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json base_report(const std::string& command, json inputs, double slack) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"tolerances", {{"slack", slack}, {"compare", kDefaultCompareTolerance}}},
              {"seed", nullptr}};
}

// ---- commands -------------------------------------------------------------

struct EvalArgs {
  std::string spec;
  std::size_t n = 0;
  SeedOptions w;
  std::string mode = "convergent";
};

int cmd_eval(const EvalArgs& a, double slack, std::ostream& out) {
  Stopwatch clock;
  const LoadedSpec spec = load_spec(a.spec);
  json report = base_report("eval", {{"spec", spec.raw}, {"n", a.n}, {"w", a.w.echo()}, {"mode", a.mode}},
                            slack);
  json results;
  if (a.mode == "convergent") {
    results["value"] = wire::to_json(convergent_at(spec.seq, a.n, a.w.point()));
    results["label"] = "f_n(w)";
  } else if (a.mode == "tail") {
    const auto tails = tail_sequence(spec.seq, a.n, a.w.point());
    json list = json::array();
    for (const auto& t : tails) list.push_back(wire::to_json(t));
    results["tails"] = list;  // t_N, ..., t_0
    results["value"] = wire::to_json(tails.back());
    results["label"] = "t_0 from t_N = w";
  } else {
    results["value"] = wire::to_json(reverse_sequence(spec.seq, a.n, a.w.point()));
    results["label"] = "r_{n+1}(w)";
  }
  report["results"] = results;
  report["timing_ms"] = clock.elapsed_ms();
  out << report.dump(2) << '\n';
  return kExitPass;
}

struct CertifyArgs {
  std::string spec;
  std::string theorem;
  std::string target = "convergents";
  SeedOptions w;
  std::optional<double> radius;
  std::optional<std::size_t> pairs;
};

int cmd_certify(const CertifyArgs& a, double slack, std::ostream& out) {
  Stopwatch clock;
  const LoadedSpec spec = load_spec(a.spec);
  const Theorem theorem = parse_theorem(a.theorem);
  const Target target = parse_target(a.target);
  const std::size_t pairs = pair_count_for(spec.seq, target, a.pairs);

  const double c_min = minimal_radius(spec.seq, theorem, target, pairs);
  const double radius = a.radius.value_or(c_min);
  const ValueRegion region = make_region(theorem, radius);
  const CertifyOptions options = certify_options(spec.seq, theorem, slack);

  RegionCertificate cert{};
  switch (target) {
    case Target::kEvenConvergents:
      cert = certify_even_convergents(spec.seq, a.w.point(), region, options);
      break;
    case Target::kOddReverse:
      cert = certify_odd_reverse(spec.seq, a.w.point(), region, options);
      break;
    case Target::kEvenTails:
      cert = certify_even_tails(spec.seq, pairs, a.w.point(), region, options);
      break;
  }

  json inputs{{"spec", spec.raw}, {"theorem", a.theorem}, {"target", a.target}, {"w", a.w.echo()}};
  inputs["C"] = a.radius ? json(*a.radius) : json(nullptr);
  if (target == Target::kEvenTails) inputs["pairs"] = pairs;
  json report = base_report("certify", inputs, slack);
  json certificate = wire::to_json(cert);
  certificate["minimal_C"] = c_min;
  certificate["theta"] = options.theta ? json(*options.theta) : json(nullptr);
  if (const auto& bounds = spec.seq.closed_form_bounds()) {
    certificate["closed_form_bounds"] = {{"even_over_odd", bounds->even_over_odd},
                                         {"odd_over_even", bounds->odd_over_even}};
  }
  report["results"] = {{"certificate", certificate}};
  report["timing_ms"] = clock.elapsed_ms();
  out << report.dump(2) << '\n';
  return cert.passed ? kExitPass : kExitCertificateFailure;
}

struct CounterexampleArgs {
  double t_min = 0.01;
  double t_max = 0.5;
  std::size_t steps = 50;
  std::string csv;
};

int cmd_counterexample(const CounterexampleArgs& a, double slack, std::ostream& out) {
  Stopwatch clock;
  if (!(a.t_min > 0.0 && a.t_min <= a.t_max && a.t_max <= 0.5)) {
    throw Error(ErrorCode::kDomain, "need 0 < t-min <= t-max <= 1/2");
  }
  if (a.steps < 1) throw Error(ErrorCode::kDomain, "need steps >= 1");

  std::vector<CounterexampleEval> rows;
  for (std::size_t k = 0; k < a.steps; ++k) {
    const double t = a.steps == 1 ? a.t_min
                                  : a.t_min + (a.t_max - a.t_min) * static_cast<double>(k) /
                                                  static_cast<double>(a.steps - 1);
    rows.push_back(counterexample_eval(t));
  }

  if (!a.csv.empty()) {
    std::ofstream csv = open_csv(a.csv);
    csv << "t,lhs_squared,threshold,violates\n";
    for (const auto& r : rows) {
      write_csv_number(csv, r.t);
      csv << ',';
      write_csv_number(csv, r.lhs_squared);
      csv << ',';
      write_csv_number(csv, r.threshold);
      csv << ',' << (r.violates ? "true" : "false") << '\n';
    }
  }

  std::size_t violations = 0;
  double max_closed_form_gap = 0.0;
  json rows_json = json::array();
  for (const auto& r : rows) {
    violations += r.violates ? 1 : 0;
    max_closed_form_gap =
        std::max(max_closed_form_gap, std::abs(r.lhs_squared - r.lhs_squared_closed) / r.lhs_squared);
    rows_json.push_back({{"t", r.t},
                         {"lhs_squared", r.lhs_squared},
                         {"lhs_squared_closed_form", r.lhs_squared_closed},
                         {"threshold", r.threshold},
                         {"violates", r.violates}});
  }

  json inputs{{"t_min", a.t_min}, {"t_max", a.t_max}, {"steps", a.steps}};
  inputs["csv"] = a.csv.empty() ? json(nullptr) : json(a.csv);
  json report = base_report("counterexample", inputs, slack);
  report["results"] = {{"violations", violations},
                       {"steps", a.steps},
                       {"max_relative_closed_form_gap", max_closed_form_gap},
                       {"rows", rows_json}};
  report["timing_ms"] = clock.elapsed_ms();
  out << report.dump(2) << '\n';
  return violations == a.steps ? kExitPass : kExitCertificateFailure;
}

struct RegionGridArgs {
  std::string spec;
  std::string theorem;
  std::optional<double> grid_radius;
  std::size_t resolution = 21;
  std::string csv;
};

int cmd_region_grid(const RegionGridArgs& a, double slack, std::ostream& out) {
  Stopwatch clock;
  const LoadedSpec spec = load_spec(a.spec);
  if (a.resolution < 2) throw Error(ErrorCode::kDomain, "resolution must be >= 2");
  if (spec.seq.count() < 2) throw Error(ErrorCode::kInvalidCertificateRequest, "need count >= 2");
  const Theorem theorem = parse_theorem(a.theorem);
  const std::size_t pairs = spec.seq.count() / 2;
  const double radius = minimal_radius(spec.seq, theorem, Target::kEvenConvergents, pairs);
  const double half_width = a.grid_radius.value_or(radius);
  if (!(half_width > 0.0)) throw Error(ErrorCode::kDomain, "grid radius must be positive");

  const ValueRegion region = make_region(theorem, radius);
  const CertifyOptions options = certify_options(spec.seq, theorem, slack);
  std::optional<Sector> sector;
  if (options.theta) sector.emplace(*options.theta);
  const Complex center = theorem == Theorem::kOriginDisk ? Complex(0.0) : Complex(radius);
  const ConvergentState state = advance_to(spec.seq, 2 * pairs);

  std::ofstream csv;
  if (!a.csv.empty()) {
    csv = open_csv(a.csv);
    csv << "w_re,w_im,val_re,val_im,in_disk\n";
  }

  std::size_t evaluated = 0, skipped = 0, inside = 0;
  const double step = 2.0 * half_width / static_cast<double>(a.resolution - 1);
  for (std::size_t i = 0; i < a.resolution; ++i) {
    for (std::size_t j = 0; j < a.resolution; ++j) {
      const Complex w = center + Complex(-half_width + step * static_cast<double>(i),
                                         -half_width + step * static_cast<double>(j));
      const bool admissible = std::visit([&](const auto& d) { return d.contains(w, slack); }, region) &&
                              (!sector || sector->contains(w));
      if (!admissible) {
        ++skipped;
        continue;
      }
      ++evaluated;
      const ExtendedComplex value = convergent_at(state, w);
      const bool in_disk = std::visit([&](const auto& d) { return d.contains(value, slack); }, region) &&
                           (!sector || sector->contains(value));
      inside += in_disk ? 1 : 0;
      if (csv.is_open()) {
        const Complex v = value.value();
        write_csv_number(csv, w.real());
        csv << ',';
        write_csv_number(csv, w.imag());
        csv << ',';
        write_csv_number(csv, v.real());
        csv << ',';
        write_csv_number(csv, v.imag());
        csv << ',' << (in_disk ? "true" : "false") << '\n';
      }
    }
  }

  json inputs{{"spec", spec.raw}, {"theorem", a.theorem}, {"grid_radius", half_width},
              {"resolution", a.resolution}};
  inputs["csv"] = a.csv.empty() ? json(nullptr) : json(a.csv);
  json report = base_report("region-grid", inputs, slack);
  report["results"] = {{"C", radius},
                       {"depth", 2 * pairs},
                       {"evaluated", evaluated},
                       {"skipped", skipped},
                       {"in_disk", inside},
                       {"in_disk_fraction", evaluated ? static_cast<double>(inside) / evaluated : 1.0}};
  report["timing_ms"] = clock.elapsed_ms();
  out << report.dump(2) << '\n';
  return inside == evaluated ? kExitPass : kExitCertificateFailure;
}

struct SweepArgs {
  std::string theorem;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::optional<double> theta_max;
};

int cmd_sweep(const SweepArgs& a, double slack, std::ostream& out) {
  Stopwatch clock;
  SweepConfig config;
  config.theorem = parse_theorem(a.theorem);
  config.samples = a.samples;
  config.seed = a.seed;
  config.slack = slack;
  config.theta_max = a.theta_max.value_or(
      config.theorem == Theorem::kOriginDisk ? std::numbers::pi / 4 - 0.01 : std::numbers::pi / 2 - 0.01);
  const SweepReport r = run_theorem_sweep(config);

  json report = base_report("sweep",
                            {{"theorem", a.theorem},
                             {"samples", a.samples},
                             {"seed", a.seed},
                             {"theta_max", config.theta_max},
                             {"max_pairs", config.max_pairs}},
                            slack);
  report["seed"] = a.seed;
  report["results"] = {{"samples", r.samples},
                       {"violations", r.violations},
                       {"disk_violations", r.disk_violations},
                       {"sector_violations", r.sector_violations},
                       {"worst_margin", r.worst_margin},
                       {"worst_sample", r.worst_sample}};
  report["timing_ms"] = clock.elapsed_ms();
  out << report.dump(2) << '\n';
  return r.violations == 0 ? kExitPass : kExitCertificateFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued-fraction value-region explorer"};
  app.require_subcommand(1);
  double slack = default_slack();
  app.add_option("--tol", slack, "Relative membership slack (default 1e-9 or $CFRAC_DEFAULT_TOL)")
      ->check(CLI::NonNegativeNumber);

  const std::vector<std::string> theorems{"origin", "shifted"};

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a convergent, tail or reverse value");
  eval_cmd->add_option("--spec", eval.spec, "Sequence spec JSON file")->required();
  eval_cmd->add_option("--n", eval.n, "Index n (N for tails)")->required();
  eval_cmd->add_option("--mode", eval.mode, "convergent | tail | reverse")
      ->check(CLI::IsMember({"convergent", "tail", "reverse"}));
  add_seed_options(eval_cmd, eval.w);

  CertifyArgs certify;
  auto* certify_cmd = app.add_subcommand("certify", "Certify a value region");
  certify_cmd->add_option("--spec", certify.spec, "Sequence spec JSON file")->required();
  certify_cmd->add_option("--theorem", certify.theorem, "origin | shifted")
      ->required()
      ->check(CLI::IsMember(theorems));
  certify_cmd->add_option("--target", certify.target, "convergents | reverse | tails")
      ->check(CLI::IsMember({"convergents", "reverse", "tails"}));
  certify_cmd->add_option("--C", certify.radius, "Disk radius (default: minimal admissible)");
  certify_cmd->add_option("--pairs", certify.pairs, "N for the tails target (seed is t_{2N})");
  add_seed_options(certify_cmd, certify.w);

  CounterexampleArgs counter;
  auto* counter_cmd = app.add_subcommand("counterexample", "Sweep the pi/4 sharpness example");
  counter_cmd->add_option("--t-min", counter.t_min, "Smallest t");
  counter_cmd->add_option("--t-max", counter.t_max, "Largest t");
  counter_cmd->add_option("--steps", counter.steps, "Number of t values");
  counter_cmd->add_option("--csv", counter.csv, "CSV output path");

  RegionGridArgs grid;
  auto* grid_cmd = app.add_subcommand("region-grid", "Evaluate even convergents over a seed grid");
  grid_cmd->add_option("--spec", grid.spec, "Sequence spec JSON file")->required();
  grid_cmd->add_option("--theorem", grid.theorem, "origin | shifted")
      ->required()
      ->check(CLI::IsMember(theorems));
  grid_cmd->add_option("--grid-radius", grid.grid_radius, "Half-width of the grid (default C)");
  grid_cmd->add_option("--resolution", grid.resolution, "Grid points per axis");
  grid_cmd->add_option("--csv", grid.csv, "CSV output path");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Randomized theorem sweep");
  sweep_cmd->add_option("--theorem", sweep.theorem, "origin | shifted")
      ->required()
      ->check(CLI::IsMember(theorems));
  sweep_cmd->add_option("--samples", sweep.samples, "Number of random instances");
  sweep_cmd->add_option("--seed", sweep.seed, "Generator seed");
  sweep_cmd->add_option("--theta-max", sweep.theta_max, "Largest sector half-angle");

  for (auto* cmd : {eval_cmd, certify_cmd, grid_cmd, sweep_cmd, counter_cmd}) {
    cmd->add_option("--tol", slack, "Relative membership slack")->check(CLI::NonNegativeNumber);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, slack, out);
    if (*certify_cmd) return cmd_certify(certify, slack, out);
    if (*counter_cmd) return cmd_counterexample(counter, slack, out);
    if (*grid_cmd) return cmd_region_grid(grid, slack, out);
    if (*sweep_cmd) return cmd_sweep(sweep, slack, out);
  } catch (const wire::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitParseError;
}

}  // namespace cfrac::cli
