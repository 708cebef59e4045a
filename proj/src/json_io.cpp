#include "weilform/json_io.h"

#include <stdexcept>

namespace weilform {

namespace {

Rational rat(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a rational string");
  return parse_rational(j.get<std::string>());
}

std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::weak: return "weak";
    case SpaceKind::holomorphic: return "holomorphic";
    case SpaceKind::cuspidal: return "cuspidal";
  }
  return "weak";
}

SpaceKind kind_from(const std::string& s) {
  if (s == "weak") return SpaceKind::weak;
  if (s == "holomorphic") return SpaceKind::holomorphic;
  if (s == "cuspidal") return SpaceKind::cuspidal;
  throw std::invalid_argument("unknown space kind " + s);
}

void expect_type(const Json& j, const char* t) {
  if (!j.is_object() || j.value("type", "") != t)
    throw std::invalid_argument(std::string("expected a JSON object of type ") + t);
}

}  // namespace

Json series_to_json(const FracQSeries& f) {
  Json terms = Json::array();
  for (auto& [e, c] : f.terms()) terms.push_back(Json::array({e, c.get_str()}));
  Json j;
  j["denom"] = f.denom();
  j["terms"] = terms;
  j["trunc"] = f.is_exact() ? Json(nullptr) : Json(f.trunc());
  return j;
}

FracQSeries series_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("series must be a JSON object");
  int64_t denom = j.at("denom").get<int64_t>();
  int64_t trunc = j.at("trunc").is_null() ? FracQSeries::kExact : j.at("trunc").get<int64_t>();
  FracQSeries f(denom, trunc);
  int64_t prev = 0;
  bool first = true;
  for (auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) throw std::invalid_argument("series term must be [e, \"p/q\"]");
    int64_t e = t[0].get<int64_t>();
    if (!first && e <= prev) throw std::invalid_argument("series exponents must be strictly ascending");
    Rational c = rat(t[1]);
    if (c == 0) throw std::invalid_argument("zero coefficients are not stored");
    f.set(e, c);
    prev = e;
    first = false;
  }
  return f;
}

Json eps_to_json(const std::map<int64_t, int>& eps) {
  Json j = Json::object();
  for (auto& [p, s] : eps) j[std::to_string(p)] = s;
  return j;
}

std::map<int64_t, int> eps_from_json(const Json& j) {
  std::map<int64_t, int> out;
  for (auto& [k, v] : j.items()) out[std::stoll(k)] = v.get<int>();
  return out;
}

Json basis_to_json(const ReducedBasis& b) {
  Json j;
  j["type"] = "reduced_basis";
  j["genus"] = genus_symbol(b.spec.D);
  j["level"] = b.spec.N;
  j["weight"] = b.spec.k.get_str();
  j["kind"] = kind_name(b.spec.kind);
  j["eps"] = eps_to_json(b.spec.eps.eps);
  j["min_exp"] = b.min_exp;
  j["order"] = b.order;
  Json forms = Json::array();
  for (auto& [m, f] : b.forms) forms.push_back({{"m", m}, {"series", series_to_json(f)}});
  j["forms"] = forms;
  j["exists"] = b.exists;
  j["obstructed"] = b.obstructed;
  return j;
}

ReducedBasis basis_from_json(const Json& j) {
  expect_type(j, "reduced_basis");
  ReducedBasis b;
  b.spec = make_space(parse_genus(j.at("genus").get<std::string>()), rat(j.at("weight")),
                      kind_from(j.at("kind").get<std::string>()));
  if (j.at("level").get<int64_t>() != b.spec.N) throw std::invalid_argument("basis level disagrees with genus");
  if (eps_from_json(j.at("eps")) != b.spec.eps.eps) throw std::invalid_argument("basis eps disagrees with genus");
  b.min_exp = j.at("min_exp").get<int64_t>();
  b.order = j.at("order").get<int64_t>();
  for (auto& f : j.at("forms")) b.forms.emplace(f.at("m").get<int64_t>(), series_from_json(f.at("series")));
  b.exists = j.at("exists").get<std::vector<int64_t>>();
  b.obstructed = j.at("obstructed").get<std::vector<int64_t>>();
  return b;
}

Json vector_to_json(const VectorForm& F) {
  Json j;
  j["type"] = "vector_form";
  j["genus"] = genus_symbol(F.D);
  j["weight"] = F.weight.get_str();
  Json comps = Json::array();
  for (size_t c = 0; c < F.components.size(); ++c)
    comps.push_back({{"norm", F.classes.class_norm[c].get_str()},
                     {"size", F.classes.class_size[c]},
                     {"series", series_to_json(F.components[c])}});
  j["components"] = comps;
  return j;
}

VectorForm vector_from_json(const Json& j) {
  expect_type(j, "vector_form");
  VectorForm F;
  F.D = parse_genus(j.at("genus").get<std::string>());
  F.classes = norm_classes(F.D);
  F.weight = rat(j.at("weight"));
  F.components.assign(F.classes.size(), FracQSeries(F.D.level()));
  std::vector<bool> seen(F.classes.size(), false);
  for (auto& c : j.at("components")) {
    size_t i = F.classes.find(rat(c.at("norm")));
    if (seen[i]) throw std::invalid_argument("duplicate norm class in vector form");
    seen[i] = true;
    F.components[i] = series_from_json(c.at("series"));
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("vector form is missing a norm class");
  return F;
}

Json lift_to_json(const BorcherdsLift& L) {
  Json j;
  j["type"] = "borcherds_lift";
  j["group_level"] = L.group_level;
  j["weight"] = L.weight.get_str();
  j["rho"] = L.weyl_rho.get_str();
  Json ex = Json::array();
  for (auto& [n, e] : L.exponents) ex.push_back(Json::array({n, e.get_str()}));
  j["exponents"] = ex;
  j["expansion"] = series_to_json(L.expansion);
  Json dv = Json::array();
  for (auto& [d, o] : L.divisors) dv.push_back(Json::array({d, o.get_str()}));
  j["divisors"] = dv;
  if (L.eta_match) {
    Json m;
    m["kind"] = to_string(L.eta_match->kind);
    Json r = Json::array();
    for (auto& [d, v] : L.eta_match->exponents) r.push_back(Json::array({d, v}));
    m["exponents"] = r;
    m["cofactor"] = L.eta_match->kind == EtaMatchKind::cofactor ? series_to_json(L.eta_match->cofactor)
                                                                : Json(nullptr);
    j["eta_match"] = m;
  } else {
    j["eta_match"] = nullptr;
  }
  return j;
}

BorcherdsLift lift_from_json(const Json& j) {
  expect_type(j, "borcherds_lift");
  BorcherdsLift L;
  L.group_level = j.at("group_level").get<int64_t>();
  L.weight = rat(j.at("weight"));
  L.weyl_rho = rat(j.at("rho"));
  for (auto& e : j.at("exponents")) L.exponents[e[0].get<int64_t>()] = Integer(e[1].get<std::string>());
  L.expansion = series_from_json(j.at("expansion"));
  for (auto& d : j.at("divisors")) L.divisors[d[0].get<int64_t>()] = Integer(d[1].get<std::string>());
  if (!j.at("eta_match").is_null()) {
    const Json& m = j.at("eta_match");
    EtaMatch em;
    std::string k = m.at("kind").get<std::string>();
    em.kind = k == "exact" ? EtaMatchKind::exact : k == "cofactor" ? EtaMatchKind::cofactor : EtaMatchKind::none;
    for (auto& r : m.at("exponents")) em.exponents[r[0].get<int64_t>()] = r[1].get<int64_t>();
    if (!m.at("cofactor").is_null()) em.cofactor = series_from_json(m.at("cofactor"));
    L.eta_match = em;
  }
  return L;
}

Json duality_to_json(const DualityReport& r) {
  Json j;
  j["type"] = "duality";
  Json es = Json::array();
  for (auto& e : r.entries)
    es.push_back({{"m", e.m}, {"d", e.d}, {"a", e.a.get_str()}, {"a_star", e.a_star.get_str()}, {"ok", e.ok()}});
  j["entries"] = es;
  j["violations"] = r.violations();
  return j;
}

DualityReport duality_from_json(const Json& j) {
  expect_type(j, "duality");
  DualityReport r;
  for (auto& e : j.at("entries"))
    r.entries.push_back({e.at("m").get<int64_t>(), e.at("d").get<int64_t>(), rat(e.at("a")), rat(e.at("a_star"))});
  return r;
}

Json hurwitz_to_json(const std::map<int64_t, Rational>& values) {
  Json j;
  j["type"] = "hurwitz";
  Json v = Json::array();
  for (auto& [n, h] : values) v.push_back(Json::array({n, h.get_str()}));
  j["values"] = v;
  return j;
}

std::map<int64_t, Rational> hurwitz_from_json(const Json& j) {
  expect_type(j, "hurwitz");
  std::map<int64_t, Rational> out;
  for (auto& v : j.at("values")) out[v[0].get<int64_t>()] = rat(v[1]);
  return out;
}

Json residuals_to_json(const std::string& genus, int64_t dim, const RelationResiduals& r) {
  Json j;
  j["type"] = "weil_check";
  j["genus"] = genus;
  j["dim"] = dim;
  j["residuals"] = {{"unitarity", r.unitarity}, {"s2_z", r.s2_z},   {"st3_z", r.st3_z},
                    {"z4_i", r.z4_i},           {"z2t", r.z2t},     {"z_perm", r.z_perm}};
  j["max"] = r.max();
  return j;
}

RelationResiduals residuals_from_json(const Json& j) {
  expect_type(j, "weil_check");
  const Json& r = j.at("residuals");
  RelationResiduals out;
  out.unitarity = r.at("unitarity").get<double>();
  out.s2_z = r.at("s2_z").get<double>();
  out.st3_z = r.at("st3_z").get<double>();
  out.z4_i = r.at("z4_i").get<double>();
  out.z2t = r.at("z2t").get<double>();
  out.z_perm = r.at("z_perm").get<double>();
  return out;
}

}  // namespace weilform
