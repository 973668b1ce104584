#include "sdream/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include "sdream/asymptotics.hpp"
#include "sdream/evaluators.hpp"
#include "sdream/parallel.hpp"
#include "sdream/zeros.hpp"

namespace sdream::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_space(char c) { return c == ' ' || c == '\t'; }

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty()) throw UsageError("malformed complex literal: " + std::string(whole));
  std::string buf(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed complex literal: " + std::string(whole));
  }
  if (used != buf.size() || !std::isfinite(v)) {
    throw UsageError("malformed complex literal: " + std::string(whole));
  }
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!is_space(c)) s.push_back(c);
  }
  if (s.empty()) throw UsageError("empty complex literal");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split before the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && (k == 0 || (s[k - 1] != 'e' && s[k - 1] != 'E'))) {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? std::string() : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part += "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, parse_real(im_part, text)};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!is_space(c)) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json json_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    for (const auto& [key, value] : table.config) out << "# " << key << ": " << csv_field(value) << '\n';
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      out << (k ? "," : "") << table.columns[k];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_field(row[k]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.config) config[key] = json_value(value);
  doc["config"] = config;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(json_value(c));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  out << doc.dump(1) << '\n';
}

GridScan compute_grid(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                      double a, const QuadratureConfig& cfg) {
  GridScan g{x_min, x_max, y_min, y_max, nx, ny, a, {}};
  g.nodes.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  const auto coord = [](double lo, double hi, int n, int i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  parallel_for(g.nodes.size(), [&](std::size_t k) {
    const int ix = static_cast<int>(k % static_cast<std::size_t>(nx));
    const int iy = static_cast<int>(k / static_cast<std::size_t>(nx));
    GridNode& node = g.nodes[k];
    node.x = coord(x_min, x_max, nx, ix);
    node.y = coord(y_min, y_max, ny, iy);
    try {
      const Complex v = f_quadrature(EvalPoint({node.x, node.y}, a), cfg).value;
      node.re_f = v.real();
      node.im_f = v.imag();
      node.abs_f = std::abs(v);
    } catch (const NumericError&) {
      node.re_f = node.im_f = node.abs_f = kNaN;
    }
  });
  return g;
}

Table grid_table(const GridScan& scan) {
  Table t;
  t.config = {{"x_min", scan.x_min}, {"x_max", scan.x_max}, {"y_min", scan.y_min},
              {"y_max", scan.y_max}, {"nx", static_cast<long long>(scan.nx)},
              {"ny", static_cast<long long>(scan.ny)}, {"a", scan.a}};
  t.columns = {"x", "y", "re_f", "im_f", "abs_f"};
  for (const auto& n : scan.nodes) t.rows.push_back({n.x, n.y, n.re_f, n.im_f, n.abs_f});
  return t;
}

GridScan read_grid_json(std::istream& in) {
  const nlohmann::json doc = nlohmann::json::parse(in);
  const auto& cfg = doc.at("config");
  GridScan g;
  g.x_min = cfg.at("x_min").get<double>();
  g.x_max = cfg.at("x_max").get<double>();
  g.y_min = cfg.at("y_min").get<double>();
  g.y_max = cfg.at("y_max").get<double>();
  g.nx = cfg.at("nx").get<int>();
  g.ny = cfg.at("ny").get<int>();
  g.a = cfg.at("a").get<double>();
  const auto num = [](const nlohmann::json& v) { return v.is_null() ? kNaN : v.get<double>(); };
  for (const auto& r : doc.at("rows")) {
    g.nodes.push_back({num(r.at(0)), num(r.at(1)), num(r.at(2)), num(r.at(3)), num(r.at(4))});
  }
  if (g.nodes.size() != static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny)) {
    throw UsageError("grid node count does not match nx * ny");
  }
  return g;
}

namespace {

struct Outcome {
  bool ok = false;
  Complex value{};
  double err = kNaN;
  std::string regime;
  std::string status = "ok";
};

using MethodFn = std::function<Outcome(const EvalPoint&, const QuadratureConfig&)>;

Outcome from_result(const MethodResult& r) {
  Outcome o;
  o.ok = true;
  o.value = r.value;
  o.err = r.err_estimate;
  if (r.condition_flag) o.status = "ok_ill_conditioned";
  return o;
}

Outcome from_approx(const ApproxValue& v) {
  Outcome o;
  o.ok = true;
  o.value = v.value;
  o.regime = std::string(to_string(v.regime));
  return o;
}

// Single-argument formulas describe a = 1 and are applied at t/a.
template <class F>
MethodFn scaled(F fn) {
  return [fn](const EvalPoint& p, const QuadratureConfig&) {
    return from_approx(fn(p.t() / p.a()));
  };
}

template <class F>
MethodFn approx(F fn) {
  return [fn](const EvalPoint& p, const QuadratureConfig&) { return from_approx(fn(p)); };
}

const std::vector<std::pair<std::string, MethodFn>>& registry() {
  static const std::vector<std::pair<std::string, MethodFn>> methods = {
      {"series",
       [](const EvalPoint& p, const QuadratureConfig&) {
         if (p.a() != 1.0) fail(ErrorKind::Domain, "plain series needs a = 1");
         return from_result(f_series(p.t()));
       }},
      {"series_general",
       [](const EvalPoint& p, const QuadratureConfig&) { return from_result(f_series_general(p)); }},
      {"quadrature",
       [](const EvalPoint& p, const QuadratureConfig& c) { return from_result(f_quadrature(p, c)); }},
      {"tilde", [](const EvalPoint& p, const QuadratureConfig& c) { return from_result(f_tilde(p, c)); }},
      {"auto",
       [](const EvalPoint& p, const QuadratureConfig&) { return from_approx(approx_auto(p)); }},
      {"half_derivative", scaled([](Complex u) { return approx_half_derivative(u); })},
      {"laplace", approx([](const EvalPoint& p) { return approx_laplace(p); })},
      {"laplace_corrected", scaled([](Complex u) { return approx_laplace_corrected(u); })},
      {"laplace_second_order", scaled([](Complex u) { return approx_laplace_second_order(u); })},
      {"interp_erf", approx([](const EvalPoint& p) { return approx_interp_erf(p); })},
      {"critical",
       [](const EvalPoint& p, const QuadratureConfig&) {
         if (p.t().imag() != 0.0) fail(ErrorKind::Domain, "critical form needs real t");
         return from_approx(approx_critical(p.t().real()));
       }},
      {"small_a", approx([](const EvalPoint& p) { return approx_small_a(p); })},
      {"small_a_expansion", approx([](const EvalPoint& p) { return approx_small_a_expansion(p); })},
      {"tilde_erfc", approx([](const EvalPoint& p) { return approx_f_tilde(p); })},
      {"neg_t_erfi", approx([](const EvalPoint& p) { return approx_neg_t_erfi(p); })},
      {"neg_t_log", approx([](const EvalPoint& p) { return approx_neg_t_log(p); })},
      {"neg_t_combined", approx([](const EvalPoint& p) { return approx_neg_t_combined(p); })},
      {"neg_t_saddle", approx([](const EvalPoint& p) { return approx_neg_t_saddle(p); })},
      {"calibrated", approx([](const EvalPoint& p) { return approx_calibrated_complex(p); })},
      {"weierstrass", scaled([](Complex u) { return approx_weierstrass(u); })},
      {"power_law", approx([](const EvalPoint& p) { return approx_power_law(p); })},
  };
  return methods;
}

const MethodFn& lookup(const std::string& name) {
  for (const auto& [key, fn] : registry()) {
    if (key == name) return fn;
  }
  std::string known;
  for (const auto& [key, fn] : registry()) known += (known.empty() ? "" : ", ") + key;
  throw UsageError("unknown method '" + name + "' (known: " + known + ")");
}

Outcome evaluate(const MethodFn& fn, const EvalPoint& p, const QuadratureConfig& cfg) {
  try {
    return fn(p, cfg);
  } catch (const NumericError& e) {
    Outcome o;
    o.status = to_string(e.kind());
    o.value = {kNaN, kNaN};
    return o;
  }
}

struct Common {
  double a = 1.0;
  double rtol = 1e-10;
  double atol = 1e-14;
  int max_subdivisions = 60;
  std::string format = "csv";
  std::string out_path;
  std::string methods;
  bool methods_given = false;
  bool timing = false;

  QuadratureConfig quadrature() const {
    QuadratureConfig c;
    c.rel_tol = rtol;
    c.abs_tol = atol;
    c.max_subdivisions = max_subdivisions;
    return c;
  }

  std::vector<std::string> method_list(const std::string& fallback) const {
    const auto list = split_list(methods_given ? methods : fallback);
    if (list.empty()) throw UsageError("at least one method must be selected");
    for (const auto& m : list) lookup(m);
    return list;
  }

  void echo(Table& t) const {
    t.config.insert(t.config.begin(), {{"a", a}, {"rtol", rtol}, {"atol", atol},
                                       {"max_subdivisions", static_cast<long long>(max_subdivisions)}});
  }

  void validate() const {
    if (a == 0.0 || !std::isfinite(a)) throw UsageError("--a must be finite and nonzero");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw UsageError("--rtol and --atol must be > 0");
    if (max_subdivisions < 1) throw UsageError("--max-subdivisions must be >= 1");
  }
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

double rel_err(Complex v, Complex ref) {
  if (std::isnan(v.real()) || std::isnan(ref.real())) return kNaN;
  return std::abs(v - ref) / std::abs(ref);
}

struct Rendered {
  Table table;
  bool any_ok = false;
};

Rendered cmd_eval(const Common& c, const std::string& t_text) {
  const Complex t = parse_complex(t_text);
  const EvalPoint p(t, c.a);
  const auto methods = c.method_list("series_general,quadrature,auto");
  const QuadratureConfig cfg = c.quadrature();
  Rendered r;
  r.table.config = {{"command", std::string("eval")}, {"t_re", t.real()}, {"t_im", t.imag()},
                    {"methods", join(methods)}};
  c.echo(r.table);
  r.table.columns = {"method", "status", "value_re", "value_im", "err_estimate", "regime"};
  if (c.timing) r.table.columns.push_back("time_s");
  for (const auto& m : methods) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = evaluate(lookup(m), p, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.any_ok = r.any_ok || o.ok;
    std::vector<Cell> row = {m, o.status, o.value.real(), o.value.imag(), o.err, o.regime};
    if (c.timing) row.emplace_back(secs);
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(n - 1);
  return v;
}

Rendered cmd_compare(const Common& c, double t_min, double t_max, int count) {
  if (count < 1) throw UsageError("--count must be >= 1");
  if (!(t_min <= t_max)) throw UsageError("--t-min must not exceed --t-max");
  const auto methods = c.method_list("auto");
  const QuadratureConfig cfg = c.quadrature();
  const auto ts = linspace(t_min, t_max, count);
  std::vector<std::vector<Outcome>> results(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const EvalPoint p(ts[i], c.a);
    results[i].push_back(evaluate(lookup("quadrature"), p, cfg));
    for (const auto& m : methods) results[i].push_back(evaluate(lookup(m), p, cfg));
  });
  Rendered r;
  r.table.config = {{"command", std::string("compare")}, {"t_min", t_min}, {"t_max", t_max},
                    {"count", static_cast<long long>(count)}, {"methods", join(methods)},
                    {"oracle", std::string("quadrature")}};
  c.echo(r.table);
  r.table.columns = {"t_re", "t_im", "oracle_re", "oracle_im"};
  for (const auto& m : methods) {
    for (const char* suffix : {"_re", "_im", "_rel_err"}) r.table.columns.push_back(m + suffix);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Outcome& oracle = results[i][0];
    std::vector<Cell> row = {ts[i], 0.0, oracle.value.real(), oracle.value.imag()};
    for (std::size_t k = 1; k < results[i].size(); ++k) {
      const Outcome& o = results[i][k];
      r.any_ok = r.any_ok || o.ok;
      row.insert(row.end(), {o.value.real(), o.value.imag(), rel_err(o.value, oracle.value)});
    }
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

Rendered cmd_profile(const Common& c, const std::string& start_text, const std::string& end_text,
                     int count) {
  const Complex start = parse_complex(start_text);
  const Complex end = parse_complex(end_text);
  if (start == end) {
    count = 1;
  } else if (count < 2) {
    throw UsageError("--count must be >= 2");
  }
  const auto methods = c.method_list("quadrature");
  const QuadratureConfig cfg = c.quadrature();
  const auto s = linspace(0.0, 1.0, count);
  std::vector<std::vector<Outcome>> results(s.size());
  parallel_for(s.size(), [&](std::size_t i) {
    const EvalPoint p(start + s[i] * (end - start), c.a);
    for (const auto& m : methods) results[i].push_back(evaluate(lookup(m), p, cfg));
  });
  Rendered r;
  r.table.config = {{"command", std::string("profile")}, {"start_re", start.real()},
                    {"start_im", start.imag()}, {"end_re", end.real()}, {"end_im", end.imag()},
                    {"count", static_cast<long long>(count)}, {"methods", join(methods)}};
  c.echo(r.table);
  r.table.columns = {"s", "t_re", "t_im"};
  for (const auto& m : methods) {
    r.table.columns.push_back(m + "_re");
    r.table.columns.push_back(m + "_im");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Complex t = start + s[i] * (end - start);
    std::vector<Cell> row = {s[i], t.real(), t.imag()};
    for (const auto& o : results[i]) {
      r.any_ok = r.any_ok || o.ok;
      row.insert(row.end(), {o.value.real(), o.value.imag()});
    }
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

Rendered cmd_grid(const Common& c, double x_min, double x_max, double y_min, double y_max, int nx,
                  int ny) {
  if (nx < 2 || ny < 2) throw UsageError("--nx and --ny must be >= 2");
  if (static_cast<double>(nx) * static_cast<double>(ny) > kMaxGridNodes) {
    throw UsageError("grid too large: nx * ny must not exceed 4e6");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) throw UsageError("grid bounds must be increasing");
  const GridScan g = compute_grid(x_min, x_max, y_min, y_max, nx, ny, c.a, c.quadrature());
  Rendered r;
  r.table = grid_table(g);
  r.table.config.insert(r.table.config.begin(), {"command", std::string("grid")});
  r.table.config.insert(r.table.config.end(),
                        {{"rtol", c.rtol}, {"atol", c.atol},
                         {"max_subdivisions", static_cast<long long>(c.max_subdivisions)}});
  for (const auto& n : g.nodes) r.any_ok = r.any_ok || !std::isnan(n.abs_f);
  return r;
}

Rendered cmd_zeros(const Common& c, int n_max, double tol) {
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  if (!(tol > 0.0)) throw UsageError("--tol must be > 0");
  RefineOptions opt;
  opt.tol = tol;
  opt.quadrature = c.quadrature();
  const ZeroTable z = zero_table(n_max, c.a, opt);
  Rendered r;
  r.table.config = {{"command", std::string("zeros")}, {"n_max", static_cast<long long>(n_max)},
                    {"tol", tol},
                    {"found", static_cast<long long>(z.stats.found)},
                    {"mean_spacing", z.stats.mean_spacing},
                    {"median_spacing", z.stats.median_spacing},
                    {"slope", z.stats.slope},
                    {"suspected_skips", static_cast<long long>(z.stats.suspected_skips)},
                    {"spacing_axis", std::string(c.a < 0.0 ? "re" : "im")}};
  c.echo(r.table);
  r.table.columns = {"n", "status", "guess_re", "guess_im", "re", "im", "residual", "iterations"};
  for (const auto& rec : z.records) {
    const bool ok = !rec.failure;
    r.any_ok = r.any_ok || ok;
    r.table.rows.push_back({static_cast<long long>(rec.index),
                            ok ? std::string("ok") : std::string(to_string(*rec.failure)),
                            rec.guess.real(), rec.guess.imag(), ok ? rec.refined.real() : kNaN,
                            ok ? rec.refined.imag() : kNaN, ok ? rec.residual : kNaN,
                            static_cast<long long>(rec.iterations)});
  }
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate f(t,a) = t * integral_0^1 (a x)^(-t x) dx and its approximations"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("-a,--a", c.a, "scale parameter a (nonzero)");
  app.add_option("--rtol", c.rtol, "quadrature relative tolerance");
  app.add_option("--atol", c.atol, "quadrature absolute tolerance");
  app.add_option("--max-subdivisions", c.max_subdivisions, "bisection depth limit");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out_path, "output file (default stdout)");
  app.add_option("--methods", c.methods, "comma-separated method list");
  app.add_flag("--timing", c.timing, "add wall-clock column to eval");

  std::string t_text;
  auto* eval = app.add_subcommand("eval", "evaluate f at one point by several methods");
  eval->add_option("-t,--t", t_text, "argument, e.g. 1, -2.5, 3+4i")->required();

  double t_min = 1.0, t_max = 30.0;
  int count = 50;
  auto* compare = app.add_subcommand("compare", "approximation errors against quadrature on real t");
  compare->add_option("--t-min", t_min);
  compare->add_option("--t-max", t_max);
  compare->add_option("--count", count);

  std::string start_text, end_text;
  int profile_count = 200;
  auto* profile = app.add_subcommand("profile", "sample along a segment of the complex t plane");
  profile->add_option("--start", start_text)->required();
  profile->add_option("--end", end_text)->required();
  profile->add_option("--count", profile_count);

  double x_min = -8, x_max = 2, y_min = 0, y_max = 60;
  int nx = 100, ny = 300;
  auto* grid = app.add_subcommand("grid", "sample f on a rectangular grid");
  grid->add_option("--x-min", x_min);
  grid->add_option("--x-max", x_max);
  grid->add_option("--y-min", y_min);
  grid->add_option("--y-max", y_max);
  grid->add_option("--nx", nx);
  grid->add_option("--ny", ny);

  int n_max = 8;
  double tol = 1e-10;
  auto* zeros = app.add_subcommand("zeros", "refine the first zeros of f");
  zeros->add_option("--n-max", n_max);
  zeros->add_option("--tol", tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  c.methods_given = app.count("--methods") > 0;

  Rendered r;
  try {
    c.validate();
    if (*eval) r = cmd_eval(c, t_text);
    else if (*compare) r = cmd_compare(c, t_min, t_max, count);
    else if (*profile) r = cmd_profile(c, start_text, end_text, profile_count);
    else if (*grid) r = cmd_grid(c, x_min, x_max, y_min, y_max, nx, ny);
    else r = cmd_zeros(c, n_max, tol);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  r.table.config.emplace_back("format", c.format);
  const Format fmt = c.format == "json" ? Format::Json : Format::Csv;
  if (c.out_path.empty()) {
    write_table(r.table, fmt, out);
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.out_path << '\n';
      return kExitUsage;
    }
    write_table(r.table, fmt, file);
  }
  if (!r.any_ok) {
    err << "error: every computation failed\n";
    return kExitAllFailed;
  }
  return kExitOk;
}

}  // namespace sdream::cli
