#include <CLI11.hpp>
#include <json.hpp>
#include <qwzeta/qwzeta.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace qwzeta;

namespace {

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json coefficient_array(const std::vector<Complex>& coeffs) {
  json out = json::array();
  for (Complex c : coeffs) out.push_back(complex_pair(c));
  return out;
}

Complex parse_complex(const std::string& text, const std::string& flag) {
  double re = 0.0;
  double im = 0.0;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &trailing) == 2)
    return {re, im};
  if (text.find(',') == std::string::npos &&
      std::sscanf(text.c_str(), "%lf%c", &re, &trailing) == 1)
    return {re, 0.0};
  throw ValidationError(flag + ": expected a complex number as re,im, got \"" +
                        text + "\"");
}

json read_json_document(const std::string& path) {
  std::string raw;
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    raw = buf.str();
  } else {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open input file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    raw = buf.str();
  }
  try {
    return json::parse(raw);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("input is not valid JSON: ") + e.what());
  }
}

Graph load_graph(const std::string& path) {
  return graph_from_json(read_json_document(path));
}

VoltageGraph load_voltage_graph(const std::string& path) {
  return voltage_graph_from_json(read_json_document(path));
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

int emit_error(int code, const std::string& kind, const std::string& message,
               json extra = json::object()) {
  extra["code"] = code;
  extra["kind"] = kind;
  extra["message"] = message;
  emit(json{{"error", extra}});
  std::cerr << "error: " << message << "\n";
  return code;
}

struct Options {
  std::string graph_path;
  std::string voltage_path;
  std::string t;
  std::string u;
  std::string a;
  std::string b;
  long long grid = 24;
  long long l = 3;
  std::string method;
  int series = -1;
  std::string format = "json";
  bool inject_fault = false;
  std::vector<std::string> gen_args;
};

CoinParams parse_coin(const Options& opt) {
  CoinParams coin = CoinParams::grover();
  if (!opt.a.empty()) coin.a = parse_complex(opt.a, "--a");
  if (!opt.b.empty()) coin.b = parse_complex(opt.b, "--b");
  return coin;
}

int run_ihara(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  if (opt.series >= 0) {
    if (!opt.t.empty())
      throw ValidationError("ihara: give either --t or --series, not both");
    if (opt.series < 1)
      throw ValidationError("ihara: --series degree must be >= 1");
    const std::vector<double> log_coeffs = ihara_log_series(g, opt.series);
    std::vector<Complex> coeffs(1, Complex(0.0));
    for (double x : log_coeffs) coeffs.emplace_back(x, 0.0);
    emit(json{{"coefficients", coefficient_array(coeffs)}});
    return 0;
  }
  if (opt.t.empty())
    throw ValidationError("ihara: --t re,im is required (or --series DEG)");
  const Complex t = parse_complex(opt.t, "--t");
  emit(json{{"value", complex_pair(ihara_zeta_bass(g, t))}});
  return 0;
}

int run_qw_zeta(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  if (opt.u.empty()) throw ValidationError("qw-zeta: --u re,im is required");
  const Complex u = parse_complex(opt.u, "--u");
  const CoinParams coin = parse_coin(opt);
  const std::string method = opt.method.empty() ? "direct" : opt.method;
  Complex value;
  if (method == "direct")
    value = qw_zeta_direct(g, coin, u);
  else if (method == "reduced")
    value = qw_zeta_reduced(g, coin, u);
  else
    throw ValidationError("qw-zeta: --method must be direct or reduced");
  emit(json{{"value", complex_pair(value)}});
  return 0;
}

int run_charpoly(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  const std::string method = opt.method.empty() ? "direct" : opt.method;
  ComplexPolynomial poly;
  if (method == "konno-sato") {
    const CoinParams coin = parse_coin(opt);
    if (coin.a != CoinParams::grover().a || coin.b != CoinParams::grover().b)
      throw ValidationError(
          "charpoly: the konno-sato method is specific to the Grover coin");
    poly = konno_sato_charpoly(g);
  } else if (method == "direct") {
    poly = qw_charpoly_direct(g, parse_coin(opt));
  } else if (method == "reduced") {
    poly = qw_charpoly_reduced(g, parse_coin(opt));
  } else {
    throw ValidationError(
        "charpoly: --method must be direct, reduced, or konno-sato");
  }
  emit(json{{"coefficients", coefficient_array(poly.coefficients)}});
  return 0;
}

int run_spectrum(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  const CoinParams coin = parse_coin(opt);
  const std::string method = opt.method.empty() ? "direct" : opt.method;
  SpectrumResult spec;
  if (method == "direct")
    spec = qw_spectrum_direct(g, coin);
  else if (method == "mapped")
    spec = qw_spectrum_mapped(g, coin);
  else
    throw ValidationError("spectrum: --method must be direct or mapped");
  if (opt.format == "csv") {
    for (Complex lambda : spec.eigenvalues) {
      char line[80];
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", lambda.real(),
                    lambda.imag());
      std::cout << line;
    }
    return 0;
  }
  if (opt.format != "json")
    throw ValidationError("spectrum: --format must be json or csv");
  emit(json{{"eigenvalues", coefficient_array(spec.eigenvalues)},
            {"multiplicity_plus_b", spec.multiplicity_plus_b},
            {"multiplicity_minus_b", spec.multiplicity_minus_b}});
  return 0;
}

int run_periodic_ihara(const Options& opt) {
  const VoltageGraph vg = load_voltage_graph(opt.voltage_path);
  if (opt.t.empty())
    throw ValidationError("periodic-ihara: --t re,im is required");
  const Complex t = parse_complex(opt.t, "--t");
  emit(json{{"value", complex_pair(periodic_ihara_zeta(vg, t, opt.grid))}});
  return 0;
}

int run_periodic_qw(const Options& opt) {
  const VoltageGraph vg = load_voltage_graph(opt.voltage_path);
  if (opt.u.empty())
    throw ValidationError("periodic-qw: --u re,im is required");
  const Complex u = parse_complex(opt.u, "--u");
  const CoinParams coin = parse_coin(opt);
  const std::string method = opt.method.empty() ? "interior" : opt.method;
  PeriodicQwRoute route;
  if (method == "interior")
    route = PeriodicQwRoute::Interior;
  else if (method == "arc")
    route = PeriodicQwRoute::Arc;
  else
    throw ValidationError("periodic-qw: --method must be interior or arc");
  emit(json{{"value",
             complex_pair(periodic_qw_zeta(vg, u, coin, opt.grid, route))}});
  return 0;
}

int run_quotient(const Options& opt) {
  const VoltageGraph vg = load_voltage_graph(opt.voltage_path);
  emit(graph_to_json(finite_quotient(vg, opt.l)));
  return 0;
}

int run_gen(const Options& opt) {
  if (opt.gen_args.empty())
    throw ValidationError(
        "gen: expected a family (cycle N, complete N, petersen, line, grid2d, "
        "honeycomb)");
  const std::string& kind = opt.gen_args[0];
  auto size_arg = [&]() -> int {
    if (opt.gen_args.size() != 2)
      throw ValidationError("gen " + kind + ": expected a size argument");
    try {
      return std::stoi(opt.gen_args[1]);
    } catch (const std::exception&) {
      throw ValidationError("gen " + kind + ": size must be an integer");
    }
  };
  auto no_arg = [&]() {
    if (opt.gen_args.size() != 1)
      throw ValidationError("gen " + kind + ": takes no size argument");
  };
  if (kind == "cycle") {
    emit(graph_to_json(cycle_graph(size_arg())));
  } else if (kind == "complete") {
    emit(graph_to_json(complete_graph(size_arg())));
  } else if (kind == "petersen") {
    no_arg();
    emit(graph_to_json(petersen_graph()));
  } else if (kind == "line") {
    no_arg();
    emit(voltage_graph_to_json(line_lattice()));
  } else if (kind == "grid2d") {
    no_arg();
    emit(voltage_graph_to_json(grid2d_lattice()));
  } else if (kind == "honeycomb") {
    no_arg();
    emit(voltage_graph_to_json(honeycomb_lattice()));
  } else {
    throw ValidationError("gen: unknown family \"" + kind + "\"");
  }
  return 0;
}

int run_cross_check(const Options& opt) {
  if (!opt.graph_path.empty() && !opt.voltage_path.empty())
    throw ValidationError("cross_check: give --graph or --voltage, not both");
  const Complex u = opt.u.empty() ? Complex(0.2, 0.0)
                                  : parse_complex(opt.u, "--u");
  const CoinParams coin = parse_coin(opt);
  std::vector<CheckResult> checks;
  json params{{"u", complex_pair(u)},
              {"a", complex_pair(coin.a)},
              {"b", complex_pair(coin.b)}};
  if (!opt.voltage_path.empty()) {
    const VoltageGraph vg = load_voltage_graph(opt.voltage_path);
    checks = cross_check_voltage(vg, coin, u, opt.grid, opt.l,
                                 opt.inject_fault);
    params["grid"] = opt.grid;
    params["L"] = opt.l;
  } else if (!opt.graph_path.empty()) {
    checks = cross_check_graph(load_graph(opt.graph_path), coin, u,
                               opt.inject_fault);
  } else {
    const json doc = read_json_document("");
    if (doc.is_object() && doc.contains("dim")) {
      checks = cross_check_voltage(voltage_graph_from_json(doc), coin, u,
                                   opt.grid, opt.l, opt.inject_fault);
      params["grid"] = opt.grid;
      params["L"] = opt.l;
    } else {
      checks =
          cross_check_graph(graph_from_json(doc), coin, u, opt.inject_fault);
    }
  }
  json lines = json::array();
  bool all_pass = true;
  std::string first_failure;
  for (const CheckResult& c : checks) {
    lines.push_back(json{{"identity", c.name},
                         {"max_residual", c.residual},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
    if (!c.pass && all_pass) first_failure = c.name;
    all_pass = all_pass && c.pass;
  }
  emit(json{{"pass", all_pass}, {"checks", lines}, {"params", params}});
  if (!all_pass) {
    std::cerr << "cross-check failed: identity " << first_failure
              << " exceeded its tolerance\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Zeta functions of graphs under general coined quantum walks: finite "
      "determinant identities and periodic-lattice torus quadrature"};
  app.require_subcommand(1);
  Options opt;

  auto add_graph_input = [&](CLI::App* sub) {
    sub->add_option("--graph", opt.graph_path,
                    "graph JSON path (default: stdin)");
  };
  auto add_voltage_input = [&](CLI::App* sub) {
    sub->add_option("--voltage", opt.voltage_path,
                    "voltage-graph JSON path (default: stdin)");
  };
  auto add_coin = [&](CLI::App* sub) {
    sub->add_option("--a", opt.a, "coin parameter a as re,im (default 1,0)");
    sub->add_option("--b", opt.b, "coin parameter b as re,im (default -1,0)");
  };

  CLI::App* ihara = app.add_subcommand(
      "ihara", "Ihara zeta via the Bass determinant, value or log-series");
  add_graph_input(ihara);
  ihara->add_option("--t", opt.t, "evaluation point as re,im");
  ihara->add_option("--series", opt.series,
                    "emit log-series coefficients through this degree");

  CLI::App* qw = app.add_subcommand(
      "qw-zeta", "coined-walk zeta 1/det(I - uU)");
  add_graph_input(qw);
  qw->add_option("--u", opt.u, "evaluation point as re,im");
  add_coin(qw);
  qw->add_option("--method", opt.method, "direct | reduced (default direct)");

  CLI::App* charpoly = app.add_subcommand(
      "charpoly", "characteristic polynomial of the walk matrix");
  add_graph_input(charpoly);
  add_coin(charpoly);
  charpoly->add_option("--method", opt.method,
                       "direct | reduced | konno-sato (default direct)");

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "walk spectrum, eigensolved or mapped");
  add_graph_input(spectrum);
  add_coin(spectrum);
  spectrum->add_option("--method", opt.method,
                       "direct | mapped (default direct)");
  spectrum->add_option("--format", opt.format, "json | csv (default json)");

  CLI::App* pihara = app.add_subcommand(
      "periodic-ihara", "per-cell Ihara zeta of a periodic graph");
  add_voltage_input(pihara);
  pihara->add_option("--t", opt.t, "evaluation point as re,im");
  pihara->add_option("--grid", opt.grid, "torus grid size per dimension");

  CLI::App* pqw = app.add_subcommand(
      "periodic-qw", "per-cell coined-walk zeta of a periodic graph");
  add_voltage_input(pqw);
  pqw->add_option("--u", opt.u, "evaluation point as re,im");
  add_coin(pqw);
  pqw->add_option("--grid", opt.grid, "torus grid size per dimension");
  pqw->add_option("--method", opt.method, "interior | arc (default interior)");

  CLI::App* quotient = app.add_subcommand(
      "quotient", "finite quotient of a periodic graph over Z^d / L");
  add_voltage_input(quotient);
  quotient->add_option("--L", opt.l, "cells per dimension");

  CLI::App* gen =
      app.add_subcommand("gen", "emit a built-in graph or lattice as JSON");
  gen->add_option("family", opt.gen_args,
                  "cycle N | complete N | petersen | line | grid2d | honeycomb");

  CLI::App* cross = app.add_subcommand(
      "cross_check", "run the identity ladder on a graph or periodic graph");
  add_graph_input(cross);
  add_voltage_input(cross);
  cross->add_option("--u", opt.u, "evaluation point as re,im (default 0.2,0)");
  add_coin(cross);
  cross->add_option("--grid", opt.grid, "torus grid for the periodic checks");
  cross->add_option("--L", opt.l, "finite-quotient size for the sampling check");
  cross->add_flag("--inject-fault", opt.inject_fault,
                  "corrupt a prefactor to exercise the failure path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return emit_error(1, "validation", std::string("argument error: ") + e.what());
  }

  try {
    if (ihara->parsed()) return run_ihara(opt);
    if (qw->parsed()) return run_qw_zeta(opt);
    if (charpoly->parsed()) return run_charpoly(opt);
    if (spectrum->parsed()) return run_spectrum(opt);
    if (pihara->parsed()) return run_periodic_ihara(opt);
    if (pqw->parsed()) return run_periodic_qw(opt);
    if (quotient->parsed()) return run_quotient(opt);
    if (gen->parsed()) return run_gen(opt);
    if (cross->parsed()) return run_cross_check(opt);
    return emit_error(1, "validation", "no subcommand given");
  } catch (const BranchError& e) {
    json extra{{"eigenvalue", complex_pair(e.eigenvalue())},
               {"theta", e.theta()}};
    return emit_error(2, e.kind_name(), e.what(), extra);
  } catch (const PoleError& e) {
    json extra{{"vanishing_factor", complex_pair(e.vanishing_factor())}};
    return emit_error(2, e.kind_name(), e.what(), extra);
  } catch (const DomainError& e) {
    return emit_error(2, e.kind_name(), e.what());
  } catch (const ValidationError& e) {
    return emit_error(1, "validation", e.what());
  } catch (const std::exception& e) {
    return emit_error(1, "internal", e.what());
  }
}
