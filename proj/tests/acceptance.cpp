// Acceptance run: one PASS/FAIL line per criterion, with the tolerances and
// time budgets pinned below. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.h"
#include "weilform/borcherds.h"
#include "weilform/cli.h"
#include "weilform/json_io.h"
#include "weilform/scalar_forms.h"
#include "weilform/vvmf.h"
#include "weilform/weil.h"

using namespace weilform;

namespace {

constexpr double kCheckSTol = 1e-6;
constexpr double kWeilTol = 1e-9;

using Table = std::map<int64_t, Rational>;

Rational r(int64_t a, int64_t b = 1) { return make_rational(a, b); }

const DiscriminantForm& n12() {
  static const DiscriminantForm D = parse_genus("2_7^+1.3^-1");
  return D;
}

// Frozen coefficient tables of the level 12 reduced forms.
const std::map<int64_t, Table>& golden_half() {
  static const std::map<int64_t, Table> t{
      {0, {{0, r(1, 2)}, {1, 1}, {4, 1}, {9, 1}}},
      {-3, {{-3, r(1, 2)}, {1, -7}, {4, 20}, {9, -39}, {12, 84}, {13, -189}}},
      {-8, {{-8, 1}, {1, -34}, {4, -188}, {9, 2430}, {12, 8262}, {13, -11968}}},
      {-11, {{-11, 1}, {1, 22}, {4, -552}, {9, -11178}, {12, 48600}, {13, 76175}}}};
  return t;
}

const std::map<int64_t, Table>& golden_three_halves() {
  static const std::map<int64_t, Table> t{
      {-1, {{-1, 1}, {0, -1}, {3, 7}, {8, 34}, {11, -22}, {12, -26}}},
      {-4, {{-4, 1}, {0, -1}, {3, -20}, {8, 188}, {11, 552}, {12, -701}}},
      {-9, {{-9, r(1, 2)}, {0, -1}, {3, 39}, {8, -2430}, {11, 11178}, {12, -8826}}},
      {-12, {{-12, r(1, 2)}, {3, -84}, {8, -8262}, {11, -48600}, {12, -41412}}}};
  return t;
}

bool matches(const FracQSeries& f, const Table& t, int64_t from, int64_t upto, std::ostream& why) {
  for (int64_t n = from; n <= upto; ++n) {
    Rational want = t.count(n) ? t.at(n) : Rational(0);
    if (f.coeff(n) != want) {
      why << "coefficient of q^" << n << " is " << f.coeff(n).get_str() << ", expected " << want.get_str() << "; ";
      return false;
    }
  }
  return true;
}

ReducedBasis cli_basis(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (run_cli(args, out, err) != kExitOk) throw std::runtime_error("weilform " + args[0] + " failed: " + err.str());
  return basis_from_json(Json::parse(out.str()));
}

// Bases shared by several criteria.
const ReducedBasis& half12() {
  static const ReducedBasis b = cli_basis({"basis", "--level", "12", "--weight", "1/2", "--min-exp", "-11", "--order",
                                           "32", "--format", "json"});
  return b;
}
const ReducedBasis& threehalves12() {
  static const ReducedBasis b = cli_basis({"basis", "--level", "12", "--weight", "3/2", "--dual", "--min-exp", "-12",
                                           "--order", "32", "--format", "json"});
  return b;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs < budget_s;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " - " << title << " [" << t.str() << " s / "
            << budget_s << " s" << (in_time ? "" : ", over budget") << "] " << o.detail << std::endl;
}

Outcome golden_weight_half() {
  std::ostringstream why;
  const ReducedBasis& b = half12();
  bool ok = b.exists == std::vector<int64_t>{-11, -8, -3, 0};
  if (!ok) why << "unexpected exists set; ";
  for (auto& [m, t] : golden_half()) ok = matches(b.form(m), t, m, 15, why) && ok;
  if (ok) why << "f_0, f_-3, f_-8, f_-11 exact through q^15";
  return {ok, why.str()};
}

Outcome golden_weight_three_halves() {
  std::ostringstream why;
  const ReducedBasis& b = threehalves12();
  bool ok = b.exists == std::vector<int64_t>{-12, -9, -4, -1};
  if (!ok) why << "unexpected exists set; ";
  for (auto& [m, t] : golden_three_halves()) ok = matches(b.form(m), t, m, 14, why) && ok;
  if (ok) why << "f*_-1, f*_-4, f*_-9, f*_-12 exact through q^14";
  return {ok, why.str()};
}

struct BasisPair {
  DiscriminantForm D;
  ReducedBasis a, b;
};

const std::vector<BasisPair>& duality_bases() {
  static const std::vector<BasisPair> pairs = [] {
    std::vector<BasisPair> out;
    for (const char* s : {"2_7^+1.3^-1", "2_1^+1"}) {
      DiscriminantForm D = parse_genus(s);
      ReducedBasis a = build_basis(make_space(D, r(1, 2)), -50, 200);
      ReducedBasis b = build_basis(make_space(dual(D), r(3, 2)), -50, 200);
      out.push_back({D, a, b});
    }
    return out;
  }();
  return pairs;
}

Outcome zagier_duality() {
  std::ostringstream why;
  bool ok = true;
  for (const auto& p : duality_bases()) {
    DualityReport rep = duality_check(p.a, p.b, 50);
    why << "N=" << p.D.level() << ": " << rep.entries.size() << " pairs, " << rep.violations() << " violations; ";
    ok = ok && rep.violations() == 0 && rep.entries.size() > 100;
  }
  return {ok, why.str()};
}

Outcome residue_pairing_random() {
  const auto& p = duality_bases()[0];
  std::vector<int64_t> ms(p.a.exists.begin(), p.a.exists.end()), ds(p.b.exists.begin(), p.b.exists.end());
  uint64_t s = 20260417;
  auto next = [&] {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  int zero = 0;
  std::ostringstream why;
  for (int i = 0; i < 20; ++i) {
    int64_t m = ms[next() % ms.size()], d = ds[next() % ds.size()];
    Rational v = residue_pairing(p.D, p.a.form(m), p.b.form(d));
    if (v == 0)
      ++zero;
    else
      why << "pairing(f_" << m << ", f*_" << d << ") = " << v.get_str() << "; ";
  }
  why << zero << "/20 pairings vanish";
  return {zero == 20, why.str()};
}

Outcome hurwitz_numbers() {
  auto h = hurwitz_table(2000);
  std::ostringstream why;
  for (int64_t n = 1; n <= 2000; ++n) {
    Rational expect = (n % 4 == 0 || n % 4 == 3) ? oracle::bqf_class_count(-n) : Rational(0);
    if (h[n] != expect) {
      why << "H(" << n << ") = " << h[n].get_str() << ", reduced forms give " << expect.get_str();
      return {false, why.str()};
    }
  }
  std::map<int64_t, Rational> first{{0, r(-1, 12)}, {3, r(1, 3)}, {4, r(1, 2)}, {7, 1}, {8, 1}, {11, 1}};
  for (auto& [n, v] : first)
    if (h[n] != v) return {false, "H(" + std::to_string(n) + ") differs from the G expansion"};
  return {true, "H(n) = weighted reduced-form count for n <= 2000; G starts -1/12 + q^3/3 + q^4/2 + q^7 + q^8 + q^11"};
}

Outcome eisenstein_projection() {
  FracQSeries Ge = eisenstein_G_epsilon(n12(), 12);
  std::ostringstream why;
  bool ok = matches(Ge, {{0, r(-1, 6)}, {3, r(1, 6)}, {8, 1}, {11, 1}}, 0, 11, why);
  FracQSeries g0 = seed_forms(12, r(3, 2), 12)[0];
  bool same = Ge == sub(eisenstein_G(12), g0.scaled(r(1, 12)));
  if (!same) why << "G^eps* != G - g_0/12; ";
  if (ok && same) why << "G^eps* = G - g_0/12 = -1/6 + q^3/6 + q^8 + q^11 + O(q^12)";
  return {ok && same, why.str()};
}

Outcome borcherds_lifts() {
  std::ostringstream why;
  bool ok = true;
  // Ψ(f_0) = η(τ)η(3τ) through q^100
  ReducedBasis deep = build_basis(make_space(n12(), r(1, 2)), -3, 101 * 101);
  BorcherdsLift L0 = lift(n12(), deep.form(0), 101);
  auto prod = oracle::multiply(oracle::euler_product(1, 1, 101), oracle::euler_product(3, 1, 101), 101);
  bool eta_ok = L0.weyl_rho == r(1, 6) && L0.weight == 1;
  for (int64_t n = 0; n <= 100 - 1 && eta_ok; ++n) eta_ok = L0.expansion.coeff_at(r(1, 6) + n) == prod[n];
  EtaMatch m0 = eta_quotient_match(L0, default_eta_pool(n12()));
  eta_ok = eta_ok && m0.kind == EtaMatchKind::exact && m0.exponents == std::map<int64_t, int64_t>{{1, 1}, {3, 1}};
  why << "Psi(f_0) " << (eta_ok ? "= eta(t)eta(3t)" : "MISMATCH") << "; ";
  ok = ok && eta_ok;

  // Ψ(12θ) at N = 4 is Δ through q^100
  DiscriminantForm D4 = parse_genus("2_1^+1");
  ReducedBasis b4 = build_basis(make_space(D4, r(1, 2)), 0, 101 * 101);
  BorcherdsLift LD = lift(D4, b4.form(0).scaled(12), 101);
  auto delta = oracle::euler_product(1, 24, 101);
  bool d_ok = LD.weyl_rho == 1 && LD.weight == 12;
  for (int64_t n = 1; n <= 100 && d_ok; ++n) d_ok = LD.expansion.coeff(n) == delta[n - 1];
  why << "Psi(12 theta) " << (d_ok ? "= Delta" : "MISMATCH") << "; ";
  ok = ok && d_ok;

  // Ψ(f_-3): exponents and the weight 1 cofactor
  BorcherdsLift L3 = lift(n12(), deep.form(-3), 12);
  bool e_ok = L3.weyl_rho == r(-1, 6) && L3.exponents.at(1) == -7 && L3.exponents.at(2) == 20 &&
              L3.exponents.at(3) == -78 && L3.exponents.at(4) == 344;
  why << "Psi(f_-3) exponents " << (e_ok ? "(-7, 20, -78, 344), rho = -1/6" : "MISMATCH") << "; ";
  ok = ok && e_ok;

  Table E1{{0, 1}, {1, 6}, {3, 6}, {4, 6}, {7, 12}, {9, 6}};
  EtaMatch m3 = eta_quotient_match(L3, default_eta_pool(n12()));
  bool c_ok = m3.kind == EtaMatchKind::cofactor && m3.exponents == std::map<int64_t, int64_t>{{1, -1}, {3, -1}};
  std::ostringstream sink;
  c_ok = c_ok && matches(m3.cofactor, E1, 0, 11, sink);
  BorcherdsLift Ls = lift(n12(), add(deep.form(-3), deep.form(0)), 12);
  c_ok = c_ok && Ls.weyl_rho == 0 && matches(Ls.expansion, E1, 0, 11, sink);
  why << "Psi(f_-3 + f_0) " << (c_ok ? "= E_1 through q^11" : "MISMATCH " + sink.str());
  ok = ok && c_ok;
  return {ok, why.str()};
}

Outcome isomorphism_roundtrip() {
  std::vector<std::complex<double>> pts{{0.0, 1.0}, {1.0 / 3, 4.0 / 3}, {-0.2, 0.9}, {0.45, 1.1}, {0.1, 1.6}};
  double worst = 0;
  int forms = 0;
  ReducedBasis a = build_basis(make_space(n12(), r(1, 2)), -11, 200);
  ReducedBasis b = build_basis(make_space(dual(n12()), r(3, 2)), -12, 200);
  WeilRep W(n12()), Wd(dual(n12()));
  for (const ReducedBasis* B : {&a, &b})
    for (auto& [m, f] : B->forms) {
      VectorForm F = psi(B->spec.D, f, B->spec.k);
      if (phi(F) != f) return {false, "phi(psi(f_" + std::to_string(m) + ")) != f_" + std::to_string(m)};
      if (!check_T(F)) return {false, "psi(f_" + std::to_string(m) + ") fails check_T"};
      CheckSResult s = check_S(B == &a ? W : Wd, F, 200, pts);
      worst = std::max(worst, s.residual);
      ++forms;
    }
  std::ostringstream why;
  why << forms << " forms round-trip exactly; max check_S residual " << worst << " (tol " << kCheckSTol << ")";
  return {worst < kCheckSTol, why.str()};
}

Outcome weil_relations() {
  double worst = 0;
  int count = 0;
  for (const auto& D : oracle::enumerate_forms(100)) {
    if (!is_transitive(D)) continue;
    worst = std::max(worst, relation_residuals(WeilRep(D)).max());
    ++count;
  }
  std::ostringstream why;
  why << count << " transitive forms with |D| <= 100; max residual " << worst << " (tol " << kWeilTol << ")";
  return {worst < kWeilTol && count > 0, why.str()};
}

Outcome structural() {
  std::ostringstream why;
  int disagreements = 0, checked = 0;
  for (const auto& D : oracle::enumerate_forms(100)) {
    oracle::ExplicitModule m = oracle::build(D);
    bool brute = oracle::transitive(m);
    if (brute != is_transitive(D)) ++disagreements;
    ++checked;
  }
  why << "transitivity: " << checked << " forms, " << disagreements << " disagreements; ";

  int obstruction_failures = 0, candidates = 0, exclusion_failures = 0;
  for (const char* s : {"2_1^+1", "2_7^+1", "2_7^+1.3^-1", "2_1^+1.3^+1", "2_7^+1.3^+1", "2_1^+1.3^-1"}) {
    DiscriminantForm D = parse_genus(s);
    Rational k = D.signature() % 4 == 1 ? r(1, 2) : r(3, 2);
    EpsilonSpaceSpec spec = make_space(D, k);
    ReducedBasis weak = build_basis(spec, -50, 120);
    auto bstar = dual_holomorphic_leads(spec, 120);
    for (int64_t m = -50; m <= 0; ++m) {
      if (!allowed_exponent(spec, m)) continue;
      ++candidates;
      bool exists = weak.has(m);
      bool obstructed = std::find(bstar.begin(), bstar.end(), -m) != bstar.end();
      if (exists == obstructed) ++obstruction_failures;
    }
    ReducedBasis other = build_basis(make_space(dual(D), 2 - k), -1, 40);
    if (weak.has(0) && other.has(0)) ++exclusion_failures;
  }
  why << "obstruction: " << candidates << " candidates, " << obstruction_failures << " failures; f_0/f*_0 exclusion failures "
      << exclusion_failures;
  return {disagreements == 0 && obstruction_failures == 0 && exclusion_failures == 0, why.str()};
}

}  // namespace

int main() {
  criterion(1, "golden weight 1/2 tables (exact)", 10, golden_weight_half);
  criterion(2, "golden weight 3/2 dual tables (exact)", 10, golden_weight_three_halves);
  criterion(3, "Zagier duality |m|,|d| <= 50 at N = 12 and N = 4, truncation 200 (exact)", 60, zagier_duality);
  criterion(4, "residue pairing vanishes for 20 random pairs at N = 12 (exact)", 30, residue_pairing_random);
  criterion(5, "Hurwitz class numbers n <= 2000 (exact)", 60, hurwitz_numbers);
  criterion(6, "Eisenstein projection G^eps* at N = 12 (exact)", 10, eisenstein_projection);
  criterion(7, "Borcherds lifts and eta identification (exact)", 30, borcherds_lifts);
  criterion(8, "phi(psi(f)) = f, check_T exact, check_S < 1e-6 at 5 points", 60, isomorphism_roundtrip);
  criterion(9, "Weil relations for transitive |D| <= 100, residual < 1e-9", 60, weil_relations);
  criterion(10, "transitivity, obstruction consistency, f_0/f*_0 exclusion", 120, structural);
  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : "acceptance: PASS") << std::endl;
  return failures ? 1 : 0;
}
