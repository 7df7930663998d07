#include "heatlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace heatlab {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

void only_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) fail(path, "unknown key '" + k + "'");
  }
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

Point vector_of(const json& j, const std::string& key, const std::string& path, int m) {
  const auto& v = field(j, key, path);
  const std::string p = path + "." + key;
  if (!v.is_array()) fail(p, "expected an array of numbers");
  if (static_cast<int>(v.size()) != m) fail(p, "expected " + std::to_string(m) + " coordinates");
  Point x(m);
  for (int i = 0; i < m; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number()) fail(p + "[" + std::to_string(i) + "]", "expected a number");
    x[i] = v[static_cast<std::size_t>(i)].get<double>();
  }
  return x;
}

// single-key object {"name": body}
std::pair<std::string, const json*> tagged(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) fail(path, "expected an object with exactly one key");
  auto it = j.begin();
  return {it.key(), &it.value()};
}

AmbientSpace parse_space(const json& j, const std::string& path) {
  auto [tag, body] = tagged(j, path);
  const std::string p = path + "." + tag;
  try {
    if (tag == "euclidean") {
      if (!body->is_number_integer()) fail(p, "expected an integer dimension");
      return AmbientSpace::euclidean(body->get<int>());
    }
    if (tag == "circle") {
      if (!body->is_number()) fail(p, "expected the circumference");
      return AmbientSpace::circle(body->get<double>());
    }
  } catch (const InvalidGeometry& e) {
    fail(p, e.what());
  }
  fail(path, "unknown space '" + tag + "' (expected euclidean or circle)");
}

Domain parse_shape(const json& j, const AmbientSpace& space, const std::string& path) {
  auto [tag, body] = tagged(j, path);
  const std::string p = path + "." + tag;
  const int m = space.dim();
  try {
    if (tag == "ball") {
      only_keys(*body, p, {"center", "r"});
      return Domain::ball(space, vector_of(*body, "center", p, m), number(*body, "r", p));
    }
    if (tag == "annulus") {
      only_keys(*body, p, {"center", "r1", "r2"});
      return Domain::annulus(space, vector_of(*body, "center", p, m), number(*body, "r1", p), number(*body, "r2", p));
    }
    if (tag == "box") {
      only_keys(*body, p, {"lo", "hi"});
      return Domain::box(space, vector_of(*body, "lo", p, m), vector_of(*body, "hi", p, m));
    }
    if (tag == "arc") {
      only_keys(*body, p, {"start", "length"});
      return Domain::arc(space, number(*body, "start", p), number(*body, "length", p));
    }
    if (tag == "union") {
      if (!body->is_array() || body->empty()) fail(p, "expected a non-empty array of shapes");
      std::vector<Domain> parts;
      for (std::size_t i = 0; i < body->size(); ++i)
        parts.push_back(parse_shape((*body)[i], space, p + "[" + std::to_string(i) + "]"));
      return Domain::disjoint_union(std::move(parts));
    }
  } catch (const InvalidGeometry& e) {
    fail(p, e.what());
  }
  fail(path, "unknown shape '" + tag + "'");
}

InitialDatum parse_datum(const json& j, const AmbientSpace& space, const std::string& path) {
  auto [tag, body] = tagged(j, path);
  const std::string p = path + "." + tag;
  if (tag == "one") {
    only_keys(*body, p, {});
    return InitialDatum::one();
  }
  if (tag == "indicator") return InitialDatum::indicator(parse_shape(*body, space, p));
  if (tag == "radial_power") {
    only_keys(*body, p, {"alpha"});
    try {
      return InitialDatum::radial_power(number(*body, "alpha", p));
    } catch (const ConfigurationError& e) {
      fail(p, e.what());
    }
  }
  fail(path, "unknown datum '" + tag + "'");
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  throw ParseError("unknown verdict '" + s + "'");
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson numbers(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(number_or_null(x));
  return a;
}

}  // namespace

DomainSpec parse_domain_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
  only_keys(j, "$", {"space", "shape", "datum"});
  const AmbientSpace space = parse_space(field(j, "space", "$"), "$.space");
  Domain d = parse_shape(field(j, "shape", "$"), space, "$.shape");
  InitialDatum psi = j.contains("datum") ? parse_datum(j["datum"], space, "$.datum") : InitialDatum::one();
  try {
    validate_datum(d, psi);
  } catch (const ConfigurationError& e) {
    fail("$.datum", e.what());
  }
  return {std::move(d), std::move(psi)};
}

DomainSpec load_domain_spec(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_domain_spec(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(const Curve& c, std::ostream& out) {
  if (c.size() == 0) throw ConfigurationError("cannot write an empty curve");
  out << "t,value,std_error,n,method\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.points[i];
    out << format_double(c.t[i]) << ',' << format_double(p.value) << ',' << format_double(p.std_error) << ','
        << p.n << ',' << to_string(p.method) << '\n';
  }
}

void write_curve_csv(const Curve& c, const std::filesystem::path& path) {
  std::ostringstream s;
  write_curve_csv(c, s);
  write_text_file(path, s.str());
}

Curve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,value,std_error,n,method")
    throw ParseError("line 1: expected header t,value,std_error,n,method");
  Curve c;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError("line " + std::to_string(lineno) + ": expected 5 fields");
    try {
      Estimate e;
      std::size_t used = 0;
      auto num = [&](const std::string& s) {
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      c.t.push_back(num(cells[0]));
      e.value = num(cells[1]);
      e.std_error = num(cells[2]);
      e.n = std::stoull(cells[3]);
      e.method = method_from_string(cells[4]);
      c.points.push_back(e);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed row");
    }
  }
  return c;
}

ojson to_json(const Estimate& e) {
  ojson j;
  j["value"] = number_or_null(e.value);
  j["std_error"] = number_or_null(e.std_error);
  j["abs_error"] = number_or_null(e.abs_error);
  j["n"] = e.n;
  j["method"] = std::string(to_string(e.method));
  j["low_confidence"] = e.low_confidence;
  return j;
}

ojson to_json(const Curve& c) {
  ojson j;
  j["descriptor"] = c.descriptor;
  j["points"] = ojson::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    ojson p = to_json(c.points[i]);
    p["t"] = number_or_null(c.t[i]);
    j["points"].push_back(p);
  }
  return j;
}

ojson to_json(const ScanReport& s) {
  ojson j;
  j["property"] = std::string(to_string(s.property));
  j["verdict"] = std::string(to_string(s.verdict));
  j["violation_found"] = s.violation_found();
  j["checks"] = s.checks;
  j["z_effective"] = number_or_null(s.z_effective);
  j["witnesses"] = ojson::array();
  for (const auto& w : s.witnesses)
    j["witnesses"].push_back({{"t", numbers(w.t)},
                              {"margin", number_or_null(w.margin)},
                              {"std_error", number_or_null(w.std_error)},
                              {"uncertainty", number_or_null(w.uncertainty)}});
  return j;
}

ojson to_json(const VerificationReport& r) {
  ojson j;
  j["theorem"] = r.theorem;
  j["verdict"] = std::string(to_string(r.overall));
  ojson cfg = ojson::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  j["checks"] = ojson::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"description", c.description},
                           {"values", numbers(c.values)},
                           {"relation", c.relation},
                           {"margin", number_or_null(c.margin)},
                           {"uncertainty", number_or_null(c.uncertainty)},
                           {"verdict", std::string(to_string(c.verdict))}});
  j["notes"] = r.notes;
  return j;
}

ojson to_json(const CmThreshold& c) {
  ojson j;
  j["m"] = c.m;
  j["theta_min"] = c.theta_min;
  j["theta_star"] = c.theta_star;
  j["c_m_squared"] = c.objective_min;
  j["c_m"] = c.c_m;
  j["lower_bound_16_log_8pi"] = 16 * std::log(8 * std::numbers::pi);
  j["curve"] = ojson::array();
  for (const auto& [th, g] : c.curve) j["curve"].push_back({number_or_null(th), number_or_null(g)});
  return j;
}

VerificationReport report_from_json(const ojson& j) {
  try {
    VerificationReport r;
    r.theorem = j.at("theorem").get<int>();
    for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("checks")) {
      SubCheck s;
      s.description = c.at("description").get<std::string>();
      for (const auto& v : c.at("values")) s.values.push_back(v.is_null() ? std::nan("") : v.get<double>());
      s.relation = c.at("relation").get<std::string>();
      s.margin = c.at("margin").is_null() ? std::nan("") : c.at("margin").get<double>();
      s.uncertainty = c.at("uncertainty").is_null() ? std::nan("") : c.at("uncertainty").get<double>();
      s.verdict = verdict_from_string(c.at("verdict").get<std::string>());
      r.checks.push_back(std::move(s));
    }
    for (const auto& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
    r.overall = verdict_from_string(j.at("verdict").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream o;
  o << "Theorem " << r.theorem << ": " << to_string(r.overall) << "\n";
  for (const auto& [k, v] : r.config) o << "  " << k << " = " << v << "\n";
  char buf[512];
  std::snprintf(buf, sizeof buf, "  %-12s %-24s %-24s %s\n", "verdict", "margin", "uncertainty", "check");
  o << buf;
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "  %-12s %-24.10g %-24.10g %s  [%s]\n", std::string(to_string(c.verdict)).c_str(),
                  c.margin, c.uncertainty, c.description.c_str(), c.relation.c_str());
    o << buf;
  }
  for (const auto& n : r.notes) o << "  note: " << n << "\n";
  return o.str();
}

std::string to_text(const ScanReport& s) {
  std::ostringstream o;
  o << to_string(s.property) << ": " << to_string(s.verdict) << " (" << s.checks << " checks, z_eff "
    << format_double(s.z_effective) << ")\n";
  for (const auto& w : s.witnesses) {
    o << "  t =";
    for (double t : w.t) o << ' ' << format_double(t);
    o << "  margin " << format_double(w.margin) << "  std_error " << format_double(w.std_error) << "  uncertainty "
      << format_double(w.uncertainty) << "\n";
  }
  return o.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << content;
  if (!f) throw IoError(path.string() + ": write failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for reading");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace heatlab
