#include "brownsig/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "brownsig/error.hpp"

namespace brownsig {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(Errc::InvalidInput, where + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) fail(Errc::InvalidInput, "unknown key '" + k + "' in " + where);
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(Errc::InvalidInput, std::string("missing key '") + key + "' in " + where);
  const json& v = j.at(key);
  if (!v.is_number()) fail(Errc::InvalidInput, std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

const json& array(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array())
    fail(Errc::InvalidInput, std::string("key '") + key + "' must be an array in " + where);
  return j.at(key);
}

}  // namespace

MeasureSpec parse_measure_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::InvalidInput, std::string("malformed measure JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    fail(Errc::InvalidInput, "measure JSON needs a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "atomic") {
    only_keys(j, {"type", "atoms"}, "atomic measure");
    AtomicSpec s;
    for (const json& a : array(j, "atoms", "atomic measure")) {
      only_keys(a, {"x", "w"}, "atom");
      s.atoms.push_back({number(a, "x", "atom"), number(a, "w", "atom")});
    }
    return s;
  }
  if (type == "piecewise_poly") {
    only_keys(j, {"type", "pieces"}, "piecewise_poly measure");
    PiecewisePolySpec s;
    for (const json& p : array(j, "pieces", "piecewise_poly measure")) {
      only_keys(p, {"lo", "hi", "coeffs"}, "piece");
      PolyPiece piece{number(p, "lo", "piece"), number(p, "hi", "piece"), {}};
      for (const json& c : array(p, "coeffs", "piece")) {
        if (!c.is_number()) fail(Errc::InvalidInput, "coefficients must be numbers");
        piece.coeffs.push_back(c.get<double>());
      }
      s.pieces.push_back(std::move(piece));
    }
    return s;
  }
  if (type == "semicircle") {
    only_keys(j, {"type", "variance"}, "semicircle measure");
    return SemicircleSpec{number(j, "variance", "semicircle measure")};
  }
  if (type == "uniform") {
    only_keys(j, {"type", "lo", "hi"}, "uniform measure");
    return UniformSpec{number(j, "lo", "uniform measure"), number(j, "hi", "uniform measure")};
  }
  if (type == "bernoulli") {
    only_keys(j, {"type", "alpha"}, "bernoulli measure");
    return BernoulliSpec{number(j, "alpha", "bernoulli measure")};
  }
  fail(Errc::InvalidInput, "unknown measure type '" + type + "'");
}

MeasureSpec load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidInput, "cannot open measure file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_measure_json(ss.str());
}

std::string measure_to_json(const MeasureSpec& spec) {
  struct V {
    json operator()(const AtomicSpec& s) const {
      json atoms = json::array();
      for (const Atom& a : s.atoms) atoms.push_back({{"x", a.x}, {"w", a.w}});
      return {{"type", "atomic"}, {"atoms", atoms}};
    }
    json operator()(const PiecewisePolySpec& s) const {
      json pieces = json::array();
      for (const PolyPiece& p : s.pieces) pieces.push_back({{"lo", p.lo}, {"hi", p.hi}, {"coeffs", p.coeffs}});
      return {{"type", "piecewise_poly"}, {"pieces", pieces}};
    }
    json operator()(const SemicircleSpec& s) const { return {{"type", "semicircle"}, {"variance", s.variance}}; }
    json operator()(const UniformSpec& s) const { return {{"type", "uniform"}, {"lo", s.lo}, {"hi", s.hi}}; }
    json operator()(const BernoulliSpec& s) const { return {{"type", "bernoulli"}, {"alpha", s.alpha}}; }
  };
  return std::visit(V{}, spec).dump();
}

MeasureSpec parse_preset(const std::string& name) {
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(name.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail(Errc::InvalidInput, "bad preset parameter '" + item + "'");
      }
    }
  }
  auto want = [&](std::size_t n) {
    if (!params.empty() && params.size() != n)
      fail(Errc::InvalidInput, "preset " + kind + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (kind == "semicircle") {
    want(1);
    return SemicircleSpec{params.empty() ? 1.0 : params[0]};
  }
  if (kind == "uniform") {
    want(2);
    return params.empty() ? UniformSpec{-1.0, 1.0} : UniformSpec{params[0], params[1]};
  }
  if (kind == "bernoulli") {
    want(1);
    return BernoulliSpec{params.empty() ? 2.0 / 3.0 : params[0]};
  }
  if (kind == "power") {
    want(1);
    const double k = params.empty() ? 2.0 : params[0];
    if (k < 0 || k != std::floor(k) || k > 20) fail(Errc::InvalidInput, "power preset needs an integer 0 <= k <= 20");
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c.back() = k + 1.0;
    return PiecewisePolySpec{{PolyPiece{0.0, 1.0, c}}};
  }
  fail(Errc::InvalidInput, "unknown preset '" + kind + "'");
}

std::string measure_digest(const MeasureSpec& spec) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : measure_to_json(spec)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace brownsig
