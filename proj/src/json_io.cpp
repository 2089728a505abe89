#include "lca/json_io.hpp"

#include "lca/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lca {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

std::int64_t int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> ints_at(const Json& j, const char* key, std::size_t n, const std::string& path) {
  std::vector<std::int64_t> out(n, 0);
  if (!j.contains(key)) return out;
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != n)
    fail(path + "." + key, "expected an array of " + std::to_string(n) + " integers");
  for (std::size_t i = 0; i < n; ++i) out[i] = int_at(a[i], path + "." + key + "[" + std::to_string(i) + "]");
  return out;
}

template <class M>
Json matrix_json(const M& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) {
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
        r.push_back(to_string(v));
      else
        r.push_back(v);
    }
    out.push_back(r);
  }
  return out;
}

std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json round_floats(const Json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_floats(*it);
    return out;
  }
  return j;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path, std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      fail(path, "not a rational: '" + j.get<std::string>() + "'");
    }
  }
  fail(path, "expected a rational string such as \"1/3\"");
}

Json to_json(const GroupDescriptor& g) {
  return Json{{"z_rank", g.z_rank}, {"t_rank", g.t_rank}, {"finite", g.finite_orders}};
}

GroupDescriptor group_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with z_rank, t_rank, finite");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "z_rank" && it.key() != "t_rank" && it.key() != "finite") fail(path + "." + it.key(), "unknown field");
  int z = j.contains("z_rank") ? static_cast<int>(int_at(j.at("z_rank"), path + ".z_rank")) : 0;
  int t = j.contains("t_rank") ? static_cast<int>(int_at(j.at("t_rank"), path + ".t_rank")) : 0;
  std::vector<std::int64_t> f;
  if (j.contains("finite")) {
    const Json& a = j.at("finite");
    if (!a.is_array()) fail(path + ".finite", "expected an array of orders");
    for (std::size_t i = 0; i < a.size(); ++i) f.push_back(int_at(a[i], path + ".finite[" + std::to_string(i) + "]"));
  }
  if (z < 0 || t < 0) fail(path, "ranks must be nonnegative");
  for (auto n : f)
    if (n < 2) fail(path + ".finite", "orders must be >= 2");
  return GroupDescriptor(z, t, f);
}

Json to_json(const GroupElement& x) {
  Json t = Json::array();
  for (const auto& r : x.t()) t.push_back(to_string(r));
  return Json{{"z", x.z()}, {"t", t}, {"f", x.f()}};
}

GroupElement element_from_json(const Json& j, const GroupDescriptor& g, const std::string& path) {
  if (j.is_number_integer() && g.z_rank + g.t_rank + g.f_rank() == 1) {
    // Bare integer shorthand on a one-coordinate group.
    std::int64_t v = j.get<std::int64_t>();
    if (g.z_rank == 1) return GroupElement(g, {v}, {}, {});
    if (g.f_rank() == 1) return GroupElement(g, {}, {}, {v});
  }
  if (j.is_string() && g.t_rank == 1 && g.z_rank == 0 && g.f_rank() == 0)
    return GroupElement(g, {}, {rational_from_json(j, path)}, {});
  if (!j.is_object()) fail(path, "expected an element object {\"z\":[..],\"t\":[..],\"f\":[..]}");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "z" && it.key() != "t" && it.key() != "f") fail(path + "." + it.key(), "unknown field");
  auto z = ints_at(j, "z", g.z_rank, path);
  auto f = ints_at(j, "f", g.f_rank(), path);
  std::vector<Rational> t(g.t_rank, Rational(0));
  if (j.contains("t")) {
    const Json& a = j.at("t");
    if (!a.is_array() || static_cast<int>(a.size()) != g.t_rank)
      fail(path + ".t", "expected an array of " + std::to_string(g.t_rank) + " rationals");
    for (int i = 0; i < g.t_rank; ++i) t[i] = rational_from_json(a[i], path + ".t[" + std::to_string(i) + "]");
  }
  return GroupElement(g, z, t, f);
}

Json to_json(const Subgroup& s) {
  if (s.kind() == Subgroup::Kind::Factors) {
    const auto& f = *s.factors();
    return Json{{"type", "factors"}, {"z", f.z}, {"t", f.t}, {"f", f.f}};
  }
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(to_json(g));
  return Json{{"type", "generators"}, {"generators", gens}};
}

Subgroup subgroup_from_json(const Json& j, const GroupDescriptor& g, const std::string& path) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "whole") return Subgroup::whole(g);
    if (s == "trivial") return Subgroup::trivial(g);
    fail(path, "unknown subgroup tag '" + s + "'");
  }
  if (j.is_array()) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(element_from_json(j[i], g, path + "[" + std::to_string(i) + "]"));
    return Subgroup::generated(g, gens);
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    fail(path, "expected a subgroup object with a \"type\" field");
  auto type = j.at("type").get<std::string>();
  auto coord = [&] { return j.contains("coord") ? static_cast<int>(int_at(j.at("coord"), path + ".coord")) : 0; };
  auto m = [&] {
    if (!j.contains("m")) fail(path + ".m", "missing");
    return int_at(j.at("m"), path + ".m");
  };
  if (type == "whole") return Subgroup::whole(g);
  if (type == "trivial") return Subgroup::trivial(g);
  if (type == "mZ") return Subgroup::multiples_in_z(g, coord(), m());
  if (type == "cyclic-in-t") return Subgroup::cyclic_in_t(g, coord(), m());
  if (type == "factors") {
    SubgroupFactors f{ints_at(j, "z", g.z_rank, path), ints_at(j, "t", g.t_rank, path), ints_at(j, "f", g.f_rank(), path)};
    if (!j.contains("z")) f.z.assign(g.z_rank, 1);
    if (!j.contains("f"))
      for (auto& d : f.f) d = 1;
    return Subgroup::from_factors(g, f);
  }
  if (type == "generators") {
    if (!j.contains("generators")) fail(path + ".generators", "missing");
    return subgroup_from_json(j.at("generators"), g, path + ".generators");
  }
  fail(path + ".type", "unknown subgroup type '" + type + "'");
}

Json to_json(const Homomorphism& h) {
  const auto& b = h.blocks();
  return Json{{"zz", matrix_json(b.zz)}, {"zt", matrix_json(b.zt)}, {"zf", matrix_json(b.zf)},
              {"tt", matrix_json(b.tt)}, {"ft", matrix_json(b.ft)}, {"ff", matrix_json(b.ff)}};
}

Homomorphism homomorphism_from_json(const Json& j, const GroupDescriptor& domain, const GroupDescriptor& codomain,
                                    const std::string& path) {
  if (j.is_number_integer()) {
    if (domain != codomain) fail(path, "a scalar map needs equal domain and codomain");
    return Homomorphism::scalar(domain, j.get<std::int64_t>());
  }
  if (!j.is_object()) fail(path, "expected an integer or an object of blocks");
  HomBlocks b;
  auto int_block = [&](const char* key, IntMatrix& m) {
    if (!j.contains(key)) return;
    const Json& a = j.at(key);
    if (!a.is_array()) fail(path + "." + key, "expected a matrix");
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (!a[r].is_array()) fail(path + "." + key, "expected rows");
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < a[r].size(); ++c)
        row.push_back(int_at(a[r][c], path + "." + key + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      m.push_back(row);
    }
  };
  auto rat_block = [&](const char* key, RatMatrix& m) {
    if (!j.contains(key)) return;
    const Json& a = j.at(key);
    if (!a.is_array()) fail(path + "." + key, "expected a matrix");
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (!a[r].is_array()) fail(path + "." + key, "expected rows");
      std::vector<Rational> row;
      for (std::size_t c = 0; c < a[r].size(); ++c)
        row.push_back(rational_from_json(a[r][c], path + "." + key + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      m.push_back(row);
    }
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k != "zz" && k != "zt" && k != "zf" && k != "tt" && k != "ft" && k != "ff") fail(path + "." + k, "unknown block");
  }
  int_block("zz", b.zz);
  rat_block("zt", b.zt);
  int_block("zf", b.zf);
  int_block("tt", b.tt);
  rat_block("ft", b.ft);
  int_block("ff", b.ff);
  return Homomorphism(domain, codomain, b);
}

Json to_json(const PolynomialFn& p) {
  Json out = Json::object();
  for (const auto& [alpha, c] : p.coeffs()) {
    std::string key = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) key += (i ? "," : "") + std::to_string(alpha[i]);
    key += ")";
    if (c.imag() == 0.0)
      out[key] = format_coeff(c.real());
    else
      out[key] = Json{{"re", format_coeff(c.real())}, {"im", format_coeff(c.imag())}};
  }
  return out;
}

PolynomialFn polynomial_from_json(const Json& j, const GroupDescriptor& dual, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object {\"(i,j)\": \"coefficient\"}");
  std::map<MultiIndex, Complex> coeffs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    std::string sub = path + "." + key;
    if (key.size() < 2 || key.front() != '(' || key.back() != ')') fail(sub, "multi-index must look like (i,j)");
    MultiIndex alpha;
    std::stringstream ss(key.substr(1, key.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        int v = std::stoi(part, &used);
        if (used != part.size() || v < 0) throw std::invalid_argument(part);
        alpha.push_back(v);
      } catch (const std::exception&) {
        fail(sub, "bad exponent '" + part + "'");
      }
    }
    if (static_cast<int>(alpha.size()) != dual.z_rank)
      fail(sub, "multi-index needs " + std::to_string(dual.z_rank) + " entries");
    const Json& v = it.value();
    Complex c;
    auto scalar = [&](const Json& x, const std::string& p) -> double {
      if (x.is_number()) return x.get<double>();
      if (x.is_string()) {
        try {
          return to_double(parse_rational(x.get<std::string>()));
        } catch (const Error&) {
          try {
            std::size_t used = 0;
            double d = std::stod(x.get<std::string>(), &used);
            if (used == x.get<std::string>().size()) return d;
          } catch (const std::exception&) {
          }
        }
      }
      fail(p, "expected a numeric coefficient");
    };
    if (v.is_object())
      c = Complex(v.contains("re") ? scalar(v.at("re"), sub + ".re") : 0.0,
                  v.contains("im") ? scalar(v.at("im"), sub + ".im") : 0.0);
    else
      c = scalar(v, sub);
    coeffs[alpha] += c;
  }
  return PolynomialFn(dual, coeffs);
}

Json to_json(const Distribution& mu) {
  if (mu.is_atomic()) {
    Json atoms = Json::array();
    for (std::size_t k = 0; k < mu.support().size(); ++k)
      atoms.push_back(Json{{"point", to_json(mu.support()[k])}, {"weight", to_string(mu.weights()[k])}});
    return Json{{"atoms", atoms}};
  }
  const CharFn& f = mu.spectral_charfn();
  if (const auto* e = std::get_if<ExpPolyForm>(&f.node().form))
    return Json{{"spectral", Json{{"type", "exp-poly"}, {"phi", to_json(e->phi)}, {"shift", to_json(e->shift)}}}};
  if (const auto* s = std::get_if<IndicatorForm>(&f.node().form))
    return Json{{"spectral", Json{{"type", "indicator"}, {"subgroup", to_json(s->subgroup)}}}};
  return Json{{"spectral", Json{{"type", f.form_name()}}}};
}

Distribution distribution_from_json(const Json& j, const GroupDescriptor& g, const std::string& path) {
  if (!j.is_object()) fail(path, "expected {\"atoms\": [...]} or {\"spectral\": {...}}");
  if (j.contains("atoms")) {
    const Json& a = j.at("atoms");
    if (!a.is_array() || a.empty()) fail(path + ".atoms", "expected a nonempty array");
    std::vector<GroupElement> pts;
    std::vector<Rational> ws;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string sub = path + ".atoms[" + std::to_string(i) + "]";
      if (!a[i].is_object() || !a[i].contains("point") || !a[i].contains("weight"))
        fail(sub, "atom needs point and weight");
      pts.push_back(element_from_json(a[i].at("point"), g, sub + ".point"));
      ws.push_back(rational_from_json(a[i].at("weight"), sub + ".weight"));
      if (ws.back() <= 0) fail(sub + ".weight", "weights must be positive");
    }
    return Distribution::atomic(g, pts, ws);
  }
  if (j.contains("spectral")) {
    const Json& s = j.at("spectral");
    std::string sub = path + ".spectral";
    if (!s.is_object() || !s.contains("type")) fail(sub, "needs a type");
    auto type = s.at("type").get<std::string>();
    if (type == "exp-poly") {
      GroupElement shift = s.contains("shift") ? element_from_json(s.at("shift"), g, sub + ".shift") : GroupElement::zero(g);
      if (!s.contains("phi")) fail(sub + ".phi", "missing");
      auto phi = polynomial_from_json(s.at("phi"), dual_group(g), sub + ".phi");
      return Distribution::spectral(g, exp_poly_charfn(shift, phi));
    }
    if (type == "haar") {
      if (!s.contains("subgroup")) fail(sub + ".subgroup", "missing");
      return haar_on_subgroup(subgroup_from_json(s.at("subgroup"), g, sub + ".subgroup"));
    }
    fail(sub + ".type", "unknown spectral type '" + type + "'");
  }
  fail(path, "expected atoms or spectral");
}

Json to_json(const Certificate& c) {
  Json out;
  out["claim"] = c.claim;
  out["pass"] = c.pass();
  out["status"] = std::string(status_name(c.status));
  out["verdict"] = c.verdict;
  if (!c.reason.empty()) out["reason"] = c.reason;
  Json margins = Json::object();
  for (const auto& [k, v] : c.margins) margins[k] = round12(v);
  out["residuals"] = margins;
  if (!c.facts.empty()) {
    Json facts = Json::object();
    for (const auto& [k, v] : c.facts) facts[k] = v;
    out["facts"] = facts;
  }
  Json w = Json::array();
  for (const auto& x : c.witnesses) w.push_back(round_floats(x));
  out["witnesses"] = w;
  out["fitted_q"] = c.fitted_q ? to_json(*c.fitted_q) : Json(nullptr);
  Json subs = Json::array();
  for (const auto& s : c.sub) subs.push_back(to_json(s));
  out["sub_certificates"] = subs;
  return out;
}

}  // namespace lca
