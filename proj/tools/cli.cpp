#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sadisc/diophantine.hpp"
#include "sadisc/discrepancy.hpp"
#include "sadisc/fit.hpp"
#include "sadisc/lowerbound.hpp"
#include "sadisc/qdynamics.hpp"
#include "sadisc/set_io.hpp"
#include "sadisc/spec_io.hpp"
#include "sadisc/text_format.hpp"

#ifndef SADISC_VERSION
#define SADISC_VERSION "unknown"
#endif

namespace sadisc::cli {

namespace {

// Bad flags or inputs: exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The computation ran but did not produce the requested result: exit status 2.
struct ComputationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_real(const std::string& s, const std::string& flag) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) throw UsageError("--" + flag + ": '" + s + "' is not a finite number");
  return v;
}

std::int64_t to_integer(const std::string& s, const std::string& flag) {
  const double v = to_real(s, flag);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) throw UsageError("--" + flag + ": '" + s + "' is not an integer");
  return static_cast<std::int64_t>(v);
}

class Params {
 public:
  explicit Params(const ExperimentConfig& cfg) : cfg_(cfg) {}

  std::optional<std::string> get(const std::string& key) const {
    auto it = cfg_.params.find(key);
    if (it == cfg_.params.end()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw UsageError(cfg_.subcommand + ": --" + key + " is required");
    return *v;
  }
  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    auto v = get(key);
    if (!v) {
      if (fallback) return *fallback;
      require(key);
    }
    return to_real(*v, key);
  }
  std::int64_t integer(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt) const {
    auto v = get(key);
    if (!v) {
      if (fallback) return *fallback;
      require(key);
    }
    return to_integer(*v, key);
  }

 private:
  const ExperimentConfig& cfg_;
};

// "a,b,c" or "lo:hi:count" (geometric spacing).
std::vector<double> real_grid(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError("--" + flag + ": expected lo:hi:count");
    const double lo = to_real(parts[0], flag), hi = to_real(parts[1], flag);
    const std::int64_t k = to_integer(parts[2], flag);
    if (!(lo > 0.0 && hi >= lo) || k < 1) throw UsageError("--" + flag + ": need 0 < lo <= hi and count >= 1");
    for (std::int64_t i = 0; i < k; ++i) {
      out.push_back(k == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(k - 1)));
    }
    out.back() = hi;
  } else {
    for (const auto& p : split(s, ',')) out.push_back(to_real(p, flag));
  }
  if (out.empty()) throw UsageError("--" + flag + ": empty list");
  return out;
}

std::vector<std::int64_t> integer_grid(const std::string& s, const std::string& flag) {
  std::vector<std::int64_t> out;
  if (s.find(':') != std::string::npos) {
    for (double v : real_grid(s, flag)) {
      const auto n = static_cast<std::int64_t>(std::llround(v));
      if (out.empty() || out.back() != n) out.push_back(n);
    }
  } else {
    for (const auto& p : split(s, ',')) out.push_back(to_integer(p, flag));
  }
  for (auto n : out) {
    if (n < 1) throw UsageError("--" + flag + ": values must be >= 1");
  }
  return out;
}

double alpha_term(const std::string& t) {
  if (t == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
  if (t.rfind("sqrt(", 0) == 0 && t.back() == ')') {
    const double x = to_real(t.substr(5, t.size() - 6), "alpha");
    if (x < 0.0) throw UsageError("--alpha: sqrt of a negative number");
    return frac(std::sqrt(x));
  }
  return frac(to_real(t, "alpha"));
}

// Comma list of numbers, "sqrt(k)" or "golden" (fractional parts are taken), or a
// file holding the same tokens separated by commas or whitespace.
Frequency parse_alpha(const Params& p) {
  std::string s = p.require("alpha");
  std::string tag = s;
  if (std::filesystem::is_regular_file(s)) {
    std::ifstream in(s);
    std::stringstream buf;
    buf << in.rdbuf();
    s = buf.str();
    std::replace_if(s.begin(), s.end(), [](char c) { return c == '\n' || c == '\t' || c == ' ' || c == '\r'; }, ',');
  }
  Frequency f;
  f.tag = tag;
  for (const auto& t : split(s, ',')) {
    if (!t.empty()) f.coords.push_back(alpha_term(t));
  }
  if (f.coords.empty()) throw UsageError("--alpha: no coordinates");
  if (auto b = p.get("b"); b && to_integer(*b, "b") != static_cast<std::int64_t>(f.dim())) {
    throw UsageError("--b disagrees with the dimension of --alpha");
  }
  return f;
}

TorusVector parse_theta(const Params& p, std::size_t b) {
  auto s = p.get("theta");
  if (!s) return TorusVector::zero(b);
  std::vector<double> v;
  for (const auto& t : split(*s, ',')) v.push_back(frac(to_real(t, "theta")));
  if (v.size() != b) throw UsageError("--theta must have the same dimension as --alpha");
  return TorusVector(std::move(v));
}

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  // path, content; first is the main output
};

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

std::string slope_so_far(const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
  std::set<std::int64_t> distinct;
  for (const auto& pt : pts) distinct.insert(pt.first);
  if (distinct.size() < 3) return "nan";
  return num(fit_exponent(pts).slope);
}

Outputs run_count(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const Frequency alpha = parse_alpha(p);
  const TorusVector theta = parse_theta(p, alpha.dim());
  const auto grid = integer_grid(p.require("N"), "N");
  const SemiAlgebraicSet s = load_set_file(p.require("set-file"));
  if (s.dim() != alpha.dim()) throw UsageError("set dimension differs from the dimension of --alpha");
  const double eq_tol = p.real("eq-tol", 0.0);
  std::ostringstream csv;
  csv << "N,count,slope_so_far\n";
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::int64_t N : grid) {
    const auto r = count_hits(theta, alpha, N, s, eq_tol);
    pts.emplace_back(N, r.count);
    csv << N << ',' << r.count << ',' << slope_so_far(pts) << '\n';
  }
  return {{{cfg.output_path, csv.str()}}};
}

Outputs run_cover(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const SemiAlgebraicSet s = load_set_file(p.require("set-file"));
  const auto eps = real_grid(p.require("epsilon"), "epsilon");
  const int pd = static_cast<int>(p.integer("probe-density", kDefaultProbeDensity));
  const double eq_tol = p.real("eq-tol", 0.0);
  std::ostringstream csv;
  csv << "epsilon,grid_side,cell_count,slope_so_far\n";
  std::vector<double> lx, ly;
  for (double e : eps) {
    const CoverReport r = grid_cover_count(s, e, pd, eq_tol);
    lx.push_back(std::log(1.0 / e));
    ly.push_back(std::log(static_cast<double>(std::max<std::int64_t>(r.cell_count, 1))));
    std::set<double> distinct(lx.begin(), lx.end());
    const std::string slope = distinct.size() >= 2 ? num(least_squares(lx, ly).slope) : "nan";
    csv << num(e) << ',' << r.grid_side << ',' << r.cell_count << ',' << slope << '\n';
  }
  return {{{cfg.output_path, csv.str()}}};
}

Outputs run_dioph(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const Frequency alpha = parse_alpha(p);
  const std::string kind = p.get("kind").value_or("wdc");
  const double tau = p.real("tau");
  const std::int64_t bound = p.integer("N");
  DiophantineReport r;
  if (kind == "wdc") {
    r = wdc_margin(alpha, tau, bound);
  } else if (kind == "dc") {
    r = dc_margin(alpha, tau, bound);
  } else {
    throw UsageError("--kind must be wdc or dc");
  }
  std::ostringstream out;
  const auto g = p.get("gamma");
  out << "kind,b,tau,scan_bound,gamma_lower,argmin";
  if (g) out << ",gamma,certified";
  out << '\n' << kind_name(r.kind) << ',' << r.b << ',' << num(r.tau) << ',' << r.scan_bound << ','
      << num(r.gamma_lower) << ',';
  for (std::size_t i = 0; i < r.argmin.size(); ++i) out << (i ? " " : "") << r.argmin[i];
  if (g) {
    const double gamma = to_real(*g, "gamma");
    out << ',' << num(gamma) << ',' << (r.gamma_lower >= gamma ? "true" : "false");
  }
  out << '\n';
  return {{{cfg.output_path, out.str()}}};
}

Outputs run_discrepancy(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const Frequency alpha = parse_alpha(p);
  const TorusVector theta = parse_theta(p, alpha.dim());
  const auto grid = integer_grid(p.require("N"), "N");
  const std::size_t b = alpha.dim();
  const std::string fam = p.get("family").value_or(b <= 2 ? "star" : "approx");
  DiscrepancyFamily family;
  if (fam == "star") family = DiscrepancyFamily::Star;
  else if (fam == "approx") family = DiscrepancyFamily::AnchoredBoxesApprox;
  else throw UsageError("--family must be star or approx");
  std::ostringstream csv;
  csv << "N,discrepancy,scaled\n";
  for (std::int64_t N : grid) {
    const auto pts = orbit_block(theta, alpha, 1, N);
    const double d = classical_discrepancy(pts, b, family);
    const double scaled = static_cast<double>(N) * d / std::pow(std::log(static_cast<double>(N)), static_cast<double>(b) + 2.0);
    csv << N << ',' << num(d) << ',' << (N > 1 ? num(scaled) : "nan") << '\n';
  }
  return {{{cfg.output_path, csv.str()}}};
}

std::string vector_line(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + num(v[i]);
  return s;
}

Outputs run_lowerbound(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const Frequency alpha = parse_alpha(p);
  const std::int64_t N = p.integer("N");
  const double eps = p.real("epsilon", 0.1);
  const double delta = p.real("delta-min", 0.1);
  const double tol = p.real("eq-tol", kDefaultPlaneTolerance);
  ConstructionOptions opts;
  opts.target_samples = static_cast<int>(p.integer("samples", kDefaultTargetSamples));
  const LowerBoundRun run = run_lower_bound(alpha, N, eps, delta, cfg.seed, opts, tol);

  std::ostringstream w;
  if (!run.construction.ok()) {
    const ConstructionFailure& f = *run.construction.failure;
    w << "status: failed\n"
      << "N: " << N << '\n'
      << "witness_scale: " << run.witness_scale << '\n'
      << "induction_step: " << f.step << '\n'
      << "window_center: " << vector_line(f.window_center) << '\n'
      << "half_width: " << num(f.half_width) << '\n'
      << "search_limit: " << f.search_limit << '\n'
      << "message: " << f.message << '\n';
    write_atomic(cfg.output_path, w.str());
    throw ComputationFailure("lowerbound: construction failed at induction step " + std::to_string(f.step) + " (" +
                             f.message + ")");
  }
  const HyperplaneWitness& wit = *run.construction.witness;
  const LatticeHitCertificate& cert = *run.certificate;
  w << "status: " << (run.success ? "ok" : "bound-not-met") << '\n'
    << "N: " << N << '\n'
    << "witness_scale: " << wit.N << '\n'
    << "epsilon: " << num(eps) << '\n'
    << "delta_min: " << num(delta) << '\n'
    << "delta_achieved: " << num(wit.delta) << '\n'
    << "in_asymptotic_regime: " << (wit.in_asymptotic_regime ? "true" : "false") << '\n'
    << "n_list:";
  for (auto n : wit.n_list) w << ' ' << n;
  w << '\n';
  for (std::size_t i = 0; i < wit.spanning.size(); ++i) w << "spanning_" << i + 1 << ": " << vector_line(wit.spanning[i]) << '\n';
  w << "normal: " << vector_line(wit.normal) << '\n'
    << "witness_invariants: " << (run.witness_check->ok ? "ok" : "violated") << '\n';
  for (const auto& v : run.witness_check->violations) w << "violation: " << v << '\n';
  w << "k_limits:";
  for (auto k : cert.k_limits) w << ' ' << k;
  w << '\n'
    << "certificate_count: " << cert.count << '\n'
    << "certificate_bound: " << num(cert.bound) << '\n'
    << "product_bound: " << num(cert.product_bound) << '\n'
    << "exhaustive: " << (cert.exhaustive ? "true" : "false") << '\n'
    << "max_plane_residual: " << num(cert.max_plane_residual) << '\n'
    << "max_orbit_error: " << num(cert.max_orbit_error) << '\n'
    << "certificate_checks: " << (cert.checks_ok ? "ok" : "violated") << '\n'
    << "plane_tol: " << num(run.plane_tol) << '\n'
    << "plane_count: " << run.plane_count << '\n'
    << "success: " << (run.success ? "true" : "false") << '\n';

  std::ostringstream c;
  for (std::size_t i = 0; i < wit.n_list.size(); ++i) c << "k_" << i + 1 << ',';
  c << "n,residual,orbit_error\n";
  for (const auto& h : cert.hits) {
    for (auto k : h.k) c << k << ',';
    c << h.n << ',' << num(h.plane_residual) << ',' << num(h.orbit_error) << '\n';
  }
  Outputs o{{{cfg.output_path, w.str()}, {cfg.output_path + ".certificate.csv", c.str()}}};
  if (!run.success) {
    for (const auto& [path, content] : o.files) write_atomic(path, content);
    throw ComputationFailure("lowerbound: certificate count " + std::to_string(cert.count) + " is below the bound " +
                             num(cert.bound) + " or a check failed");
  }
  return o;
}

OperatorSpec load_spec_with_overrides(const Params& p) {
  OperatorSpec spec = load_operator_spec(p.require("spec-file"));
  if (auto v = p.get("lambda")) spec.lambda = to_real(*v, "lambda");
  if (auto v = p.get("L")) spec.L = to_integer(*v, "L");
  if (p.get("alpha")) spec.alpha = parse_alpha(p);
  if (p.get("theta") || spec.theta.dim() != spec.alpha.dim()) spec.theta = parse_theta(p, spec.alpha.dim());
  validate(spec);
  return spec;
}

Outputs run_dynamics(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const OperatorSpec spec = load_spec_with_overrides(p);
  const std::string mode = p.get("mode").value_or("moments");
  if (mode == "badset") {
    const std::int64_t N = p.integer("N");
    const std::int64_t N1 = p.integer("N1");
    const cplx z(p.real("E", 0.0), p.real("eta", 0.01));
    LDTParams ldt = default_ldt_params(spec);
    ldt.sigma1 = p.real("sigma1", ldt.sigma1);
    ldt.c2 = p.real("c2", ldt.c2);
    const auto bad = bad_set(spec.theta, spec.alpha, z, N, N1, ldt, spec);
    std::ostringstream csv, rep;
    csv << "n\n";
    for (auto n : bad) csv << n << '\n';
    rep << "N: " << N << '\n'
        << "N1: " << N1 << '\n'
        << "E: " << num(z.real()) << '\n'
        << "eta: " << num(z.imag()) << '\n'
        << "sigma1: " << num(ldt.sigma1) << '\n'
        << "c2: " << num(ldt.c2) << '\n'
        << "bad_count: " << bad.size() << '\n'
        << "bad_fraction: " << num(static_cast<double>(bad.size()) / static_cast<double>(2 * N + 1)) << '\n';
    return {{{cfg.output_path, csv.str()}, {cfg.output_path + ".report", rep.str()}}};
  }
  if (mode != "moments") throw UsageError("--mode must be moments or badset");

  const double pw = p.real("p", 2.0);
  const auto t_grid = real_grid(p.require("T-grid"), "T-grid");
  const MomentSeries s = moment_series(spec, delta_state(0), pw, t_grid);
  std::ostringstream csv, rep;
  csv << "t,value,edge_mass\n";
  double max_edge = 0.0;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    csv << num(s.times[i]) << ',' << num(s.values[i]) << ',' << num(s.edge_mass[i]) << '\n';
    max_edge = std::max(max_edge, s.edge_mass[i]);
  }
  rep << "p: " << num(pw) << '\n'
      << "L: " << spec.L << '\n'
      << "lambda: " << num(spec.lambda) << '\n'
      << "spectral_bound: " << num(s.spectral_bound) << '\n'
      << "points: " << s.times.size() << '\n'
      << "max_edge_mass: " << num(max_edge) << '\n'
      << "all_valid: " << (s.all_valid() ? "true" : "false") << '\n';
  std::optional<std::string> refused;
  try {
    const MomentFit f = fit_moment_series(s);
    rep << "ballistic_slope: " << num(f.ballistic_slope) << '\n'
        << "ballistic_r_squared: " << num(f.ballistic_r_squared) << '\n'
        << "loglog_exponent: " << num(f.loglog_exponent) << '\n'
        << "loglog_r_squared: " << num(f.loglog_r_squared) << '\n'
        << "fit: ok\n";
  } catch (const std::runtime_error& e) {
    refused = e.what();
    rep << "fit: " << e.what() << '\n';
  }
  Outputs o{{{cfg.output_path, csv.str()}, {cfg.output_path + ".report", rep.str()}}};
  if (refused) {
    for (const auto& [path, content] : o.files) write_atomic(path, content);
    throw ComputationFailure("dynamics: " + *refused);
  }
  return o;
}

Outputs run_sweep(const ExperimentConfig& cfg) {
  const Params p(cfg);
  const Frequency alpha = parse_alpha(p);
  const auto grid = integer_grid(p.require("N"), "N");
  std::ostringstream csv, sum;
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  std::int64_t total = 0;
  if (auto file = p.get("set-file")) {
    const SemiAlgebraicSet s = load_set_file(*file);
    if (s.dim() != alpha.dim()) throw UsageError("set dimension differs from the dimension of --alpha");
    const TorusVector theta = parse_theta(p, alpha.dim());
    const double eq_tol = p.real("eq-tol", 0.0);
    csv << "N,count\n";
    for (std::int64_t N : grid) {
      const std::int64_t c = count_hits(theta, alpha, N, s, eq_tol).count;
      pts.emplace_back(N, c);
      total += c;
      csv << N << ',' << c << '\n';
    }
    sum << "family: set-file\n";
  } else {
    const std::string fam = p.get("family").value_or("hyperplane");
    if (fam != "hyperplane") throw UsageError("--family must be hyperplane when no --set-file is given");
    if (alpha.dim() < 2) throw UsageError("the hyperplane family needs b >= 2");
    const double eps = p.real("epsilon", 0.1);
    const double delta = p.real("delta-min", 0.1);
    const double tol = p.real("eq-tol", kDefaultPlaneTolerance);
    const HyperplaneFamily family = build_hyperplane_family(alpha, grid, eps, delta, cfg.seed);
    csv << "N,count,plane_built_for\n";
    for (std::int64_t N : grid) {
      const FamilyCount c = count_family_hits(alpha, N, family, tol);
      pts.emplace_back(N, c.count);
      total += c.count;
      csv << N << ',' << c.count << ',' << family.built_for[c.best_plane] << '\n';
    }
    sum << "family: hyperplane\n"
        << "plane_tol: " << num(tol) << '\n'
        << "planes: " << family.normals.size() << '\n';
    for (std::size_t i = 0; i < family.normals.size(); ++i) {
      sum << "normal_" << family.built_for[i] << ": " << vector_line(family.normals[i]) << '\n';
    }
    sum << "failed_constructions:";
    for (auto n : family.failed) sum << ' ' << n;
    sum << '\n';
  }
  sum << "total: " << total << '\n';
  std::set<std::int64_t> distinct;
  for (const auto& pt : pts) distinct.insert(pt.first);
  if (distinct.size() >= 3) {
    const ExponentFit f = fit_exponent(pts);
    sum << "slope: " << num(f.slope) << '\n'
        << "intercept: " << num(f.intercept) << '\n'
        << "r_squared: " << num(f.r_squared) << '\n';
  } else {
    sum << "slope: nan\n";
  }
  return {{{cfg.output_path, csv.str()}, {cfg.output_path + ".summary", sum.str()}}};
}

}  // namespace

std::string canonical_form(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "subcommand=" << cfg.subcommand << '\n';
  for (const auto& [k, v] : cfg.params) os << k << '=' << v << '\n';
  os << "seed=" << cfg.seed << '\n';
  return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_form(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run(const ExperimentConfig& cfg, std::ostream& err) {
  try {
    if (cfg.output_path.empty()) throw UsageError("--out is required");
    Outputs o;
    const std::string& sc = cfg.subcommand;
    if (sc == "count") o = run_count(cfg);
    else if (sc == "cover") o = run_cover(cfg);
    else if (sc == "dioph") o = run_dioph(cfg);
    else if (sc == "discrepancy") o = run_discrepancy(cfg);
    else if (sc == "dynamics") o = run_dynamics(cfg);
    else if (sc == "lowerbound") o = run_lowerbound(cfg);
    else if (sc == "sweep") o = run_sweep(cfg);
    else throw UsageError("unknown subcommand '" + sc + "'");
    for (const auto& [path, content] : o.files) write_atomic(path, content);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    write_atomic(cfg.output_path + ".prov", std::string("config_hash=") + hash + " version=" + SADISC_VERSION +
                                                " subcommand=" + sc + "\n");
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const ComputationFailure& e) {
    err << "failed: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return 2;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Semi-algebraic discrepancy of Kronecker orbits and quasi-periodic transport experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SADISC_VERSION));

  struct Flag {
    const char* name;
    const char* help;
  };
  const std::map<std::string, std::vector<Flag>> flags{
      {"count",
       {{"b", "dimension check"}, {"alpha", "frequency: comma list, sqrt(k), golden, or file"},
        {"theta", "phase, comma list (default 0)"}, {"N", "N or grid (a,b,c or lo:hi:count)"},
        {"set-file", "set definition file"}, {"eq-tol", "tolerance for == conditions"}}},
      {"cover",
       {{"set-file", "set definition file"}, {"epsilon", "scale or list of scales"},
        {"probe-density", "probe points per cell axis"}, {"eq-tol", "tolerance for == conditions"}}},
      {"dioph",
       {{"b", "dimension check"}, {"alpha", "frequency"}, {"kind", "wdc or dc"}, {"tau", "exponent"},
        {"N", "scan bound"}, {"gamma", "margin to certify"}}},
      {"discrepancy",
       {{"b", "dimension check"}, {"alpha", "frequency"}, {"theta", "phase"}, {"N", "N or grid"},
        {"family", "star or approx"}}},
      {"dynamics",
       {{"spec-file", "operator spec file"}, {"lambda", "coupling override"}, {"alpha", "frequency override"},
        {"theta", "phase override"}, {"L", "window radius override"}, {"p", "moment power"},
        {"T-grid", "times: list or lo:hi:count"}, {"mode", "moments or badset"}, {"N", "bad-set range"},
        {"N1", "Green's function window"}, {"E", "energy"}, {"eta", "imaginary part of z"},
        {"sigma1", "norm exponent"}, {"c2", "decay rate"}}},
      {"lowerbound",
       {{"b", "dimension check"}, {"alpha", "frequency"}, {"N", "count horizon"}, {"epsilon", "exponent slack"},
        {"delta-min", "angular margin"}, {"eq-tol", "plane tolerance"}, {"samples", "target directions"}}},
      {"sweep",
       {{"b", "dimension check"}, {"alpha", "frequency"}, {"theta", "phase"}, {"N", "grid"},
        {"set-file", "set definition file (default: hyperplane family)"}, {"family", "hyperplane"},
        {"epsilon", "exponent slack"}, {"delta-min", "angular margin"}, {"eq-tol", "tolerance"}}},
  };

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::uint64_t> seeds;
  std::map<std::string, std::string> outs;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    subs[name] = sub;
    for (const auto& f : flags.at(name)) sub->add_option(std::string("--") + f.name, values[name][f.name], f.help);
    sub->add_option("--seed", seeds[name], "run seed")->default_val(0);
    sub->add_option("--out", outs[name], "output path")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse failure is a usage error.
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (const auto& name : subcommands()) {
    CLI::App* sub = subs[name];
    if (!sub->parsed()) continue;
    ExperimentConfig cfg;
    cfg.subcommand = name;
    cfg.seed = seeds[name];
    cfg.output_path = outs[name];
    for (const auto& f : flags.at(name)) {
      if (sub->count(std::string("--") + f.name) > 0) cfg.params[f.name] = values[name][f.name];
    }
    return run(cfg, std::cerr);
  }
  return 1;
}

}  // namespace sadisc::cli
