#include "heatlab/cli.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "heatlab/calculus.hpp"
#include "heatlab/io.hpp"
#include "heatlab/theorems.hpp"

namespace heatlab::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": '" + s + "' is not a number");
}

std::vector<double> number_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_number(item, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return kSuccess;
    case Verdict::fail: return kViolation;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kSoftware;
}

int combine(int a, int b) {
  if (a == kViolation || b == kViolation) return kViolation;
  if (a == kInconclusive || b == kInconclusive) return kInconclusive;
  return kSuccess;
}

struct Common {
  std::string domain;
  std::string t_spec;
  bool include_zero = false;
  std::string method = "auto";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20240805;
  std::string out_path;
  bool json = false;
  double z = 4.0;
  CLI::Option* samples_opt = nullptr;
};

ContentParams content_params(const Common& c) {
  if (c.samples < 1000) throw UsageError("--samples must be at least 1000");
  ContentParams p;
  p.method = method_from_string(c.method);
  p.samples = c.samples;
  p.seed = c.seed;
  return p;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty()) out << content;
  else write_text_file(path, content);
}

int cmd_curve(const Common& c, const std::string& quantity, const std::string& route,
              const std::vector<std::string>& asserts, std::ostream& out, std::ostream& err) {
  const auto spec = load_domain_spec(c.domain);
  const auto grid = parse_time_grid(c.t_spec, c.include_zero);
  const auto params = content_params(c);
  Curve curve;
  if (quantity == "content") {
    curve = heat_content_curve(spec.domain, spec.datum, grid, params);
  } else if (quantity == "loss") {
    const auto r = route == "direct" ? LossRoute::direct : LossRoute::difference;
    curve = heat_loss_curve(spec.domain, spec.datum, grid, params, r);
  } else {
    curve = dH_curve(spec.domain, spec.datum, grid, quantity == "dH1" ? 1 : 2, params);
  }
  int code = kSuccess;
  nlohmann::ordered_json scans = nlohmann::ordered_json::array();
  std::string scan_text;
  for (const auto& a : asserts) {
    ScanOptions so;
    so.z = c.z;
    const auto s = scan(curve, property_from_string(a), so);
    code = combine(code, exit_for(s.verdict));
    scans.push_back(to_json(s));
    scan_text += to_text(s);
  }
  if (c.json) {
    auto j = to_json(curve);
    if (!asserts.empty()) j["scans"] = scans;
    emit(out, c.out_path, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    write_curve_csv(curve, csv);
    emit(out, c.out_path, csv.str());
    if (!c.out_path.empty()) out << scan_text;
    else err << scan_text;
  }
  return code;
}

struct VerifyArgs {
  int theorem = 0;
  int m = 0;
  double delta = 0.05;
  double alpha = 2.0;
  double c = 0;
  double theta = 0;
  std::string eps = "5e-4,1e-3,2e-3";
};

int cmd_verify(const Common& c, const VerifyArgs& v, std::ostream& out) {
  VerificationReport rep;
  VerifyOptions vo;
  vo.scan.z = c.z;
  switch (v.theorem) {
    case 1:
    case 5: {
      if (c.domain.empty()) throw UsageError("--domain is required for theorem " + std::to_string(v.theorem));
      const auto spec = load_domain_spec(c.domain);
      if (!spec.datum.is_one()) throw UsageError("theorems 1 and 5 concern psi = 1");
      vo.params = content_params(c);
      if (v.theorem == 1) {
        if (c.t_spec.empty()) throw UsageError("--t is required for theorem 1");
        rep = verify_thm1(spec.domain, parse_time_grid(c.t_spec, c.include_zero), vo);
      } else {
        rep = verify_thm5(spec.domain, parse_time_grid(c.t_spec.empty() ? "list:1,2,4" : c.t_spec), vo);
      }
      break;
    }
    case 2: {
      const int m = v.m > 0 ? v.m : 2;
      const auto cm = cm_threshold(m);
      const std::size_t samples = c.samples_opt->count() > 0 ? c.samples : 10'000'000;
      if (samples < 1000) throw UsageError("--samples must be at least 1000");
      rep = verify_thm2(m, v.c > 0 ? v.c : cm.c_m, v.theta > 0 ? v.theta : cm.theta_star, samples, c.seed);
      break;
    }
    case 3: {
      const int m = v.m > 0 ? v.m : 2;
      const auto ts = c.t_spec.empty() ? thm3_default_t_grid() : parse_time_grid(c.t_spec);
      rep = verify_thm3(v.delta, m, thm3_default_x_grid(v.delta, m), ts);
      break;
    }
    case 4: {
      Thm4Options o;
      if (!c.t_spec.empty()) o.scan_grid = with_midpoints(parse_time_grid(c.t_spec));
      rep = verify_thm4(v.alpha, v.m > 0 ? v.m : 1, number_list(v.eps, "--eps"), o);
      break;
    }
    default:
      throw UsageError("--theorem must be 1, 2, 3, 4 or 5");
  }
  const std::string json = to_json(rep).dump(2) + "\n";
  if (!c.out_path.empty()) write_text_file(c.out_path, json);
  out << (c.json ? json : to_text(rep));
  return exit_for(rep.overall);
}

int cmd_cm(int m, const Common& c, std::ostream& out) {
  const auto r = cm_threshold(m);
  const double lower = 16 * std::log(8 * std::numbers::pi);
  if (c.json) {
    emit(out, c.out_path, to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "m = " << m << "\n"
      << "theta* = " << format_double(r.theta_star) << "\n"
      << "c_m = " << format_double(r.c_m) << "\n"
      << "c_m^2 = " << format_double(r.objective_min) << "\n"
      << "16 log(8 pi) = " << format_double(lower) << "\n"
      << "c_m^2 >= 16 log(8 pi): " << (r.objective_min >= lower ? "holds" : "VIOLATED") << "\n";
    emit(out, c.out_path, o.str());
  }
  return r.objective_min >= lower ? kSuccess : kViolation;
}

int cmd_report(const std::string& in, const std::vector<std::string>& properties, const Common& c,
               std::ostream& out) {
  const std::string text = read_text_file(in);
  if (in.size() >= 4 && in.substr(in.size() - 4) == ".csv") {
    std::istringstream s(text);
    const Curve curve = read_curve_csv(s);
    int code = kSuccess;
    for (const auto& p : properties.empty() ? std::vector<std::string>{"decreasing", "midpoint_convex"} : properties) {
      ScanOptions so;
      so.z = c.z;
      const auto r = scan(curve, property_from_string(p), so);
      out << (c.json ? to_json(r).dump(2) + "\n" : to_text(r));
      code = combine(code, exit_for(r.verdict));
    }
    return code;
  }
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(in + ": invalid JSON (byte " + std::to_string(e.byte) + ")");
  }
  const auto rep = report_from_json(j);
  out << (c.json ? to_json(rep).dump(2) + "\n" : to_text(rep));
  return exit_for(rep.overall);
}

void add_common(CLI::App* app, Common& c, bool with_domain) {
  if (with_domain) app->add_option("--domain", c.domain, "domain spec (JSON)");
  app->add_option("--t", c.t_spec, "time grid: lin:a:b:n | log:a:b:n | list:t1,t2,...");
  app->add_flag("--include-zero", c.include_zero, "prepend t = 0");
  app->add_option("--method", c.method, "auto | mc | mc_semigroup | mc_exterior | exact1d | box_exact | "
                                        "radial_quad | eigensum | kernel_quad | finite_difference");
  c.samples_opt = app->add_option("--samples", c.samples, "Monte Carlo samples (>= 1000)");
  app->add_option("--seed", c.seed, "64-bit seed");
  app->add_option("--out", c.out_path, "output file");
  app->add_flag("--json", c.json, "JSON output");
  app->add_option("--z", c.z, "standard errors required for a decision");
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& spec, bool include_zero) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("time grid '" + spec + "': expected kind:...");
  const std::string kind = spec.substr(0, colon);
  std::vector<double> grid;
  if (kind == "list") {
    grid = number_list(spec.substr(colon + 1), "time grid");
  } else if (kind == "lin" || kind == "log") {
    const auto parts = split(spec.substr(colon + 1), ':');
    if (parts.size() != 3) throw UsageError("time grid '" + spec + "': expected " + kind + ":a:b:n");
    const double a = to_number(parts[0], "time grid"), b = to_number(parts[1], "time grid");
    const double n = to_number(parts[2], "time grid");
    if (!(n >= 2) || n != std::floor(n)) throw UsageError("time grid: n must be an integer >= 2");
    if (kind == "log" && !(a > 0)) throw UsageError("time grid: log grids need a > 0");
    if (!(b > a)) throw UsageError("time grid: need a < b");
    grid = kind == "lin" ? lin_grid(a, b, static_cast<std::size_t>(n)) : log_grid(a, b, static_cast<std::size_t>(n));
  } else {
    throw UsageError("time grid '" + spec + "': kind must be lin, log or list");
  }
  if (include_zero && grid.front() != 0) grid.insert(grid.begin(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0) || !std::isfinite(grid[i])) throw UsageError("time grid: times must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("time grid must be strictly increasing");
  }
  return grid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat content of open sets: curves, scans and theorem checks", "heatlab"};
  app.require_subcommand(1);

  Common common;
  std::string quantity = "content", route = "direct";
  std::vector<std::string> asserts;
  auto* curve = app.add_subcommand("curve", "compute H(t), the heat loss F(t) or dH/dt on a grid");
  add_common(curve, common, true);
  curve->add_option("--quantity", quantity, "content | loss | dH1 | dH2")
      ->check(CLI::IsMember({"content", "loss", "dH1", "dH2"}));
  curve->add_option("--route", route, "heat loss route: direct | difference")
      ->check(CLI::IsMember({"direct", "difference"}));
  curve->add_option("--assert", asserts,
                    "scan the curve: decreasing | strictly_decreasing | midpoint_convex | strictly_midpoint_convex");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a theorem verification");
  add_common(verify, common, true);
  verify->add_option("--theorem", va.theorem, "1..5")->required();
  verify->add_option("--m", va.m, "dimension (theorems 2, 3, 4)");
  verify->add_option("--delta", va.delta, "ball radius (theorem 3)");
  verify->add_option("--alpha", va.alpha, "exponent of the radial datum (theorem 4)");
  verify->add_option("--c", va.c, "outer radius (theorem 2; default c_m)");
  verify->add_option("--theta", va.theta, "probe time (theorem 2; default the minimizer)");
  verify->add_option("--eps", va.eps, "comma-separated eps values (theorem 4)");

  int cm_m = 2;
  auto* cm = app.add_subcommand("cm", "threshold radius c_m and minimizer theta*");
  cm->add_option("--m", cm_m, "dimension");
  cm->add_flag("--json", common.json, "JSON output");
  cm->add_option("--out", common.out_path, "output file");

  std::string in;
  std::vector<std::string> properties;
  auto* report = app.add_subcommand("report", "print a saved report, or scan a saved curve CSV");
  report->add_option("--in", in, "report JSON or curve CSV")->required();
  report->add_option("--property", properties, "properties to scan (CSV input)");
  report->add_flag("--json", common.json, "JSON output");
  report->add_option("--z", common.z, "standard errors required for a decision");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (curve->parsed()) {
      if (common.domain.empty() || common.t_spec.empty()) throw UsageError("curve needs --domain and --t");
      return cmd_curve(common, quantity, route, asserts, out, err);
    }
    if (verify->parsed()) return cmd_verify(common, va, out);
    if (cm->parsed()) return cmd_cm(cm_m, common, out);
    if (report->parsed()) return cmd_report(in, properties, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const InvalidGeometry& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const ConfigurationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kSoftware;
  }
  return kUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace heatlab::cli
