#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "mlf/asymptotics.hpp"
#include "mlf/bessel.hpp"
#include "mlf/errors.hpp"
#include "mlf/mittag_leffler.hpp"
#include "mlf/parallel.hpp"
#include "mlf/radial_fourier.hpp"

namespace mlf::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Parses "a+bi", "a-bi", "bi", "a" (a trailing j is accepted too).
Complex parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  auto bad = [&] { return UsageError("cannot parse complex number '" + s + "'"); };
  if (s.empty()) throw bad();
  auto to_double = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != t.size()) throw bad();
    return v;
  };
  char last = s.back();
  if (last != 'i' && last != 'j') return {to_double(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s)};
  return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

// Accepts a number or a multiple of pi such as "pi", "-3pi/4", "0.5pi".
double parse_angle(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  auto bad = [&] { return UsageError("cannot parse angle '" + s + "'"); };
  std::size_t p = s.find("pi");
  try {
    if (p == std::string::npos) {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw bad();
      return v;
    }
    std::string head = s.substr(0, p), tail = s.substr(p + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double k = head.empty() || head == "+" ? 1.0 : head == "-" ? -1.0 : std::stod(head);
    double d = 1.0;
    if (!tail.empty()) {
      if (tail[0] != '/') throw bad();
      d = std::stod(tail.substr(1));
    }
    return k * kPi / d;
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

std::string iso_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Shortest round-trip representation.
std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

ordered_json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

struct Common {
  double alpha = 1.0;
  double beta = 1.0;
  std::string phi = "pi";
  double sigma = 1.0;
  int dim = 1;
  double abs_tol = QuadratureConfig{}.abs_tol;
  double rel_tol = QuadratureConfig{}.rel_tol;
  std::string format;
  std::string out_path;
  bool no_timestamp = false;

  QuadratureConfig quad() const {
    QuadratureConfig c;
    c.abs_tol = abs_tol;
    c.rel_tol = rel_tol;
    c.validate();
    return c;
  }
  TransformProblem problem() const {
    TransformProblem tp{alpha, beta, parse_angle(phi), sigma, dim};
    tp.validate();
    return tp;
  }
};

void add_ml_options(CLI::App* c, Common& o) {
  c->add_option("--alpha", o.alpha, "Mittag-Leffler alpha, 0 < alpha < 2")->capture_default_str();
  c->add_option("--beta", o.beta, "Mittag-Leffler beta > 0")->capture_default_str();
}

void add_problem_options(CLI::App* c, Common& o) {
  add_ml_options(c, o);
  c->add_option("--phi", o.phi, "Rotation angle in (-pi, pi]; accepts forms like 3pi/4")
      ->capture_default_str();
  c->add_option("--sigma", o.sigma, "Radial exponent sigma > 0")->capture_default_str();
  c->add_option("--dim", o.dim, "Dimension n >= 1")->capture_default_str();
}

void add_output_options(CLI::App* c, Common& o, bool tabular) {
  c->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
  c->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance")->capture_default_str();
  if (tabular) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }
  c->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
  c->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from JSON output");
}

ordered_json header(const std::string& command, const Common& o, ordered_json params) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  if (!o.no_timestamp) j["timestamp"] = iso_timestamp();
  j["params"] = std::move(params);
  return j;
}

ordered_json problem_params(const TransformProblem& tp, const Common& o) {
  return ordered_json{{"alpha", tp.alpha}, {"beta", tp.beta},     {"phi", tp.phi},
                      {"sigma", tp.sigma}, {"dim", tp.n},         {"abs_tol", o.abs_tol},
                      {"rel_tol", o.rel_tol}};
}

void emit(const std::string& text, const Common& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + o.out_path + "'");
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Geometric grid or one point when lo == hi for a single point.
std::vector<double> xi_grid(double lo, double hi, int points) {
  if (points < 1) throw UsageError("--xi-points must be at least 1");
  if (!(lo > 0.0) || !std::isfinite(lo)) throw UsageError("--xi-min must be positive and finite");
  if (points == 1) {
    if (hi != lo) throw UsageError("a single grid point requires --xi-max equal to --xi-min");
    return {lo};
  }
  if (!(hi > lo) || !std::isfinite(hi)) throw UsageError("--xi-max must exceed --xi-min");
  return geometric_grid(lo, hi, points);
}

struct TabularRow {
  double key = 0.0;
  Complex value{};
  double error = 0.0;
  ordered_json meta;
};

std::string render(const std::string& command, const Common& o, const ordered_json& params,
                   const std::string& key, const std::vector<TabularRow>& rows) {
  if (o.format == "csv") {
    std::ostringstream s;
    s << key << ",re,im,abs,est_error\n";
    for (const auto& r : rows) {
      s << num(r.key) << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << ','
        << num(std::abs(r.value)) << ',' << num(r.error) << '\n';
    }
    return s.str();
  }
  ordered_json j = header(command, o, params);
  j["records"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json rec;
    rec[key == "xi" ? "xi_mag" : key] = r.key;
    rec["value_re"] = r.value.real();
    rec["value_im"] = r.value.imag();
    rec["abs"] = std::abs(r.value);
    rec["est_error"] = r.error;
    rec["meta"] = r.meta;
    j["records"].push_back(rec);
  }
  return dump(j);
}

int cmd_eval_ml(const Common& o, const std::vector<std::string>& zs, std::ostream& out) {
  MLParams p{o.alpha, o.beta};
  p.validate();
  if (zs.empty()) throw UsageError("eval-ml needs at least one --z");
  std::string format = o.format.empty() ? "csv" : o.format;
  std::vector<Complex> z;
  for (const auto& s : zs) z.push_back(parse_complex(s));
  std::function<MLValue(std::size_t)> f = [&](std::size_t i) { return ml_eval(p, z[i]); };
  std::vector<MLValue> v = parallel_map<MLValue>(z.size(), f);
  if (format == "csv") {
    std::ostringstream s;
    s << "z_re,z_im,re,im,abs,est_error,method\n";
    for (std::size_t i = 0; i < z.size(); ++i) {
      s << num(z[i].real()) << ',' << num(z[i].imag()) << ',' << num(v[i].value.real()) << ','
        << num(v[i].value.imag()) << ',' << num(std::abs(v[i].value)) << ',' << num(v[i].error)
        << ',' << to_string(v[i].method) << '\n';
    }
    emit(s.str(), o, out);
    return kOk;
  }
  ordered_json j = header("eval-ml", o, {{"alpha", p.alpha}, {"beta", p.beta}});
  j["records"] = ordered_json::array();
  for (std::size_t i = 0; i < z.size(); ++i) {
    j["records"].push_back({{"z_re", z[i].real()},
                            {"z_im", z[i].imag()},
                            {"value_re", v[i].value.real()},
                            {"value_im", v[i].value.imag()},
                            {"abs", std::abs(v[i].value)},
                            {"est_error", v[i].error},
                            {"meta", {{"method", to_string(v[i].method)}}}});
  }
  emit(dump(j), o, out);
  return kOk;
}

int cmd_eval_bessel(const Common& o, double lambda_re, double lambda_im,
                    const std::vector<double>& rs, const std::string& method, int order,
                    std::ostream& out) {
  if (rs.empty()) throw UsageError("eval-bessel needs at least one --r");
  const Complex lambda(lambda_re, lambda_im);
  const QuadratureConfig cfg = o.quad();
  std::vector<TabularRow> rows;
  std::optional<BesselExpansion> e;
  if (method == "expansion") e = build_expansion(lambda, order);
  for (double r : rs) {
    TabularRow row;
    row.key = r;
    if (method == "series") {
      row.value = bessel_j_series(lambda, r);
    } else if (method == "poisson") {
      QuadResult q = bessel_j_poisson(lambda, r, cfg);
      row.value = q.value;
      row.error = q.error;
    } else {
      row.value = bessel_asymptotic(*e, r);
      row.meta = {{"order", order}};
    }
    rows.push_back(row);
  }
  ordered_json params{{"lambda_re", lambda_re}, {"lambda_im", lambda_im}, {"method", method}};
  Common oo = o;
  if (oo.format.empty()) oo.format = "csv";
  emit(render("eval-bessel", oo, params, "r", rows), oo, out);
  return kOk;
}

TailStrategy strategy_from(const std::string& name, int order) {
  TailStrategy s;
  if (name == "expansion") s.kind = TailStrategy::Kind::BesselExpansionAccelerated;
  else if (name == "direct") s.kind = TailStrategy::Kind::DirectPeriodSum;
  else s.kind = TailStrategy::Kind::ContourRotation;
  s.M = order;
  return s;
}

int cmd_transform(const Common& o, double lo, double hi, int points, const std::string& strategy,
                  int order, const std::string& gnuplot, std::ostream& out) {
  TransformProblem tp = o.problem();
  tp.require_tail_regime();
  const QuadratureConfig cfg = o.quad();
  TailStrategy st = strategy_from(strategy, order);
  st.validate(tp.n);
  std::vector<double> grid = xi_grid(lo, hi, points);
  std::function<TransformValue(std::size_t)> f = [&](std::size_t i) {
    return ml_transform(tp, grid[i], st, cfg);
  };
  std::vector<TransformValue> v = parallel_map<TransformValue>(grid.size(), f);
  std::vector<TabularRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back({grid[i], v[i].value, v[i].error,
                    {{"M_re", v[i].M.real()},
                     {"M_im", v[i].M.imag()},
                     {"N_re", v[i].N.real()},
                     {"N_im", v[i].N.imag()}}});
  }
  ordered_json params = problem_params(tp, o);
  params["strategy"] = to_string(st.kind);
  params["expansion_order"] = st.order_for(tp.n);
  Common oo = o;
  if (oo.format.empty()) oo.format = "csv";
  emit(render("transform", oo, params, "xi", rows), oo, out);
  if (!gnuplot.empty()) {
    std::ofstream g(gnuplot, std::ios::binary);
    if (!g) throw UsageError("cannot open gnuplot file '" + gnuplot + "'");
    g << "# log10(xi) log10(|F|)\n";
    for (const auto& r : rows) g << num(std::log10(r.key)) << ' ' << num(std::log10(std::abs(r.value))) << '\n';
  }
  return kOk;
}

ordered_json fit_json(const ExponentFit& f) {
  ordered_json grid = ordered_json::array();
  for (const auto& [xi, v] : f.grid) grid.push_back({xi, v.real(), v.imag()});
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"grid", grid}};
}

int cmd_verify(const Common& o, const std::string& which, double slo, double shi, int sp, double llo,
               double lhi, int lp, std::ostream& out) {
  TransformProblem tp = o.problem();
  tp.require_tail_regime();
  AsymptoticConfig cfg;
  cfg.quad = o.quad();
  ordered_json j = header("verify-asymptotics", o, problem_params(tp, o));
  bool matched = true;
  ordered_json report;
  if (which == "small" || which == "both") {
    std::vector<double> g = xi_grid(slo, shi, sp);
    SmallXiReport r = verify_small_xi(tp, g, cfg);
    report["small_xi_law"] = to_string(r.detected);
    report["expected_small_xi_law"] = to_string(r.expected);
    report["small_slope_fit"] = fit_json(r.fit);
    report["small_expected_slope"] = r.expected_slope;
    report["small_log_fit"] = {{"intercept", r.log_fit.intercept},
                               {"coefficient", r.log_fit.coefficient},
                               {"r_squared", r.log_fit.r_squared},
                               {"residual", r.log_fit.residual}};
    report["small_ratio_spread"] = r.ratio_spread;
    report["leading_term_vanishes"] = r.leading_term_vanishes;
    report["small_matched"] = r.matched;
    report["small_notes"] = r.notes;
    matched = matched && r.matched;
  }
  if (which == "large" || which == "both") {
    std::vector<double> g = xi_grid(llo, lhi, lp);
    LargeXiReport r = verify_large_xi(tp, g, cfg);
    report["large_slope_fit"] = fit_json(r.fit);
    report["large_expected_slope"] = r.expected_slope;
    report["constants_matched"] = r.constants_matched;
    report["constant_reference"] = {r.constant_reference.real(), r.constant_reference.imag()};
    report["constant_measured"] = {r.constant_measured.real(), r.constant_measured.imag()};
    report["singular_ratio"] = r.singular_ratio;
    report["large_matched"] = r.matched;
    report["large_notes"] = r.notes;
    matched = matched && r.matched;
  }
  report["matched"] = matched;
  j["report"] = report;
  emit(dump(j), o, out);
  return matched ? kOk : kLawMismatch;
}

ordered_json region_json(const LpRegion& r) {
  return {{"lower", json_number(r.p_lower)},
          {"upper", json_number(r.p_upper)},
          {"lower_open", r.lower_open},
          {"upper_open", r.upper_open},
          {"source", to_string(r.source)}};
}

int cmd_lp_region(const Common& o, const std::vector<double>& ps, std::ostream& out) {
  TransformProblem tp = o.problem();
  LpRegions r = lp_region(tp);
  ordered_json j = header("lp-region", o, problem_params(tp, o));
  j["theorem3"] = region_json(r.full);
  j["hausdorff_young"] = r.hausdorff_young ? region_json(*r.hausdorff_young) : ordered_json(nullptr);
  j["leading_term_vanishes"] = r.leading_term_vanishes;
  if (!ps.empty()) {
    AsymptoticConfig cfg;
    cfg.quad = o.quad();
    LpSamples s = sample_lp_shells(tp, cfg);
    ordered_json checks = ordered_json::array();
    for (double p : ps) {
      LpCheck c = lp_numerical_check(s, p);
      checks.push_back({{"p", json_number(p)},
                        {"verdict", to_string(c.verdict)},
                        {"analytic", c.analytic},
                        {"in_region", r.full.contains(p)},
                        {"near_ratio", c.near_ratio},
                        {"far_ratio", c.far_ratio}});
    }
    j["checks"] = checks;
  }
  emit(dump(j), o, out);
  return kOk;
}

int cmd_ibp(const Common& o, double xi, int ell, int N, std::ostream& out) {
  TransformProblem tp = o.problem();
  double rel = ibp_identity_check(tp, xi, ell, N, o.quad());
  ordered_json params = problem_params(tp, o);
  params["xi"] = xi;
  params["ell"] = ell;
  params["N"] = N;
  ordered_json j = header("ibp-check", o, params);
  j["relative_difference"] = rel;
  emit(dump(j), o, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mittag-Leffler radial Fourier transform toolkit"};
  app.require_subcommand(1, 1);
  Common o;

  auto* ml = app.add_subcommand("eval-ml", "Evaluate E_{alpha,beta}(z)");
  std::vector<std::string> zs;
  add_ml_options(ml, o);
  ml->add_option("--z", zs, "Argument such as -1+0.5i; repeatable")->allow_extra_args(false);
  add_output_options(ml, o, true);

  auto* bj = app.add_subcommand("eval-bessel", "Evaluate J_lambda(r)");
  double lre = 0.0, lim = 0.0;
  std::vector<double> rs;
  std::string bmethod = "series";
  int border = 2;
  bj->add_option("--lambda", lre, "Real part of the order")->capture_default_str();
  bj->add_option("--lambda-im", lim, "Imaginary part of the order")->capture_default_str();
  bj->add_option("--r", rs, "Argument; repeatable")->allow_extra_args(false);
  bj->add_option("--method", bmethod, "Evaluator")
      ->check(CLI::IsMember({"series", "poisson", "expansion"}))
      ->capture_default_str();
  bj->add_option("--expansion-order", border, "Order M of the large-r expansion")->capture_default_str();
  add_output_options(bj, o, true);

  double xi_min = 1.0, xi_max = 1.0;
  int xi_points = 1;
  std::string strategy = "expansion";
  int order = 0;
  std::string gnuplot;
  auto* tr = app.add_subcommand("transform", "Fourier transform of E(e^{i phi}|x|^sigma) on a |xi| grid");
  add_problem_options(tr, o);
  tr->add_option("--xi-min", xi_min, "Smallest |xi|")->capture_default_str();
  tr->add_option("--xi-max", xi_max, "Largest |xi|")->capture_default_str();
  tr->add_option("--xi-points", xi_points, "Number of geometric grid points")->capture_default_str();
  tr->add_option("--strategy", strategy, "Tail strategy")
      ->check(CLI::IsMember({"expansion", "direct", "rotation"}))
      ->capture_default_str();
  tr->add_option("--expansion-order", order, "Bessel expansion order M (0 = smallest admissible)")
      ->capture_default_str();
  tr->add_option("--gnuplot", gnuplot, "Also write log10(xi) log10|F| columns to PATH");
  add_output_options(tr, o, true);

  auto* va = app.add_subcommand("verify-asymptotics", "Fit small and large |xi| exponents");
  std::string which = "both";
  double s_lo = 1e-4, s_hi = 1e-1, l_lo = 10.0, l_hi = 1e4;
  int s_pts = 13, l_pts = 13;
  add_problem_options(va, o);
  va->add_option("--law", which, "Which limit to check")
      ->check(CLI::IsMember({"small", "large", "both"}))
      ->capture_default_str();
  va->add_option("--xi-min", s_lo, "Small-|xi| grid start")->capture_default_str();
  va->add_option("--xi-max", s_hi, "Small-|xi| grid end")->capture_default_str();
  va->add_option("--xi-points", s_pts, "Small-|xi| grid points")->capture_default_str();
  va->add_option("--large-xi-min", l_lo, "Large-|xi| grid start")->capture_default_str();
  va->add_option("--large-xi-max", l_hi, "Large-|xi| grid end")->capture_default_str();
  va->add_option("--large-xi-points", l_pts, "Large-|xi| grid points")->capture_default_str();
  add_output_options(va, o, false);

  auto* lr = app.add_subcommand("lp-region", "L^p regions of the transform");
  std::vector<double> ps;
  add_problem_options(lr, o);
  lr->add_option("--check-p", ps, "Also classify these p numerically; repeatable")
      ->allow_extra_args(false);
  add_output_options(lr, o, false);

  auto* ib = app.add_subcommand("ibp-check", "Integration-by-parts identity residual");
  double ib_xi = 1.0;
  int ib_ell = 0, ib_n = 1;
  add_problem_options(ib, o);
  ib->add_option("--xi", ib_xi, "|xi|")->capture_default_str();
  ib->add_option("--ell", ib_ell, "Power shift l in {0, 1}")->capture_default_str();
  ib->add_option("--N", ib_n, "Number of integrations by parts, 1..3")->capture_default_str();
  add_output_options(ib, o, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    worker_count();
    if (*ml) return cmd_eval_ml(o, zs, out);
    if (*bj) return cmd_eval_bessel(o, lre, lim, rs, bmethod, border, out);
    if (*tr) return cmd_transform(o, xi_min, xi_max, xi_points, strategy, order, gnuplot, out);
    if (*va) return cmd_verify(o, which, s_lo, s_hi, s_pts, l_lo, l_hi, l_pts, out);
    if (*lr) return cmd_lp_region(o, ps, out);
    if (*ib) return cmd_ibp(o, ib_xi, ib_ell, ib_n, out);
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const DegenerateFitError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const LawMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kLawMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace mlf::cli
