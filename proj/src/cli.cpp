#include "weilform/cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weilform/borcherds.h"
#include "weilform/errors.h"
#include "weilform/eta_quotient.h"
#include "weilform/json_io.h"
#include "weilform/scalar_forms.h"
#include "weilform/vvmf.h"
#include "weilform/weil.h"

namespace weilform {

int64_t default_order() {
  if (const char* env = std::getenv("WEILFORM_ORDER")) {
    try {
      size_t used = 0;
      long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("WEILFORM_ORDER must be a positive integer, got '") + env + "'");
  }
  return 200;
}

namespace {

struct FormOptions {
  int64_t level = 0;
  std::string genus;
  std::string eps;
  std::string weight;
  bool dual = false;
};

struct Common {
  std::string format = "text";
  std::string output;
};

void add_form_options(CLI::App* sub, FormOptions& o, bool with_weight = true) {
  sub->add_option("--level", o.level, "level N = 4M");
  sub->add_option("--genus", o.genus, "genus symbol such as 2_7^+1.3^-1");
  sub->add_option("--eps", o.eps, "sign vector, e.g. +,+ (2 first, then odd p | M ascending) or 2:+,3:-");
  if (with_weight) sub->add_option("--weight", o.weight, "half-integral weight, e.g. 1/2");
  sub->add_flag("--dual", o.dual, "use the dual discriminant form");
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output", c.output, "write to this file instead of stdout");
}

std::map<int64_t, int> parse_eps(const std::string& s, int64_t N) {
  std::vector<int64_t> keys{2};
  for (int64_t p : prime_divisors(N / 4))
    if (p != 2) keys.push_back(p);
  std::map<int64_t, int> out;
  if (s.empty()) {
    for (int64_t p : keys) out[p] = 1;
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  size_t idx = 0;
  while (std::getline(ss, item, ',')) {
    int64_t p;
    std::string sign = item;
    auto colon = item.find(':');
    if (colon != std::string::npos) {
      p = std::stoll(item.substr(0, colon));
      sign = item.substr(colon + 1);
    } else {
      if (idx >= keys.size()) throw UsageError("too many entries in --eps");
      p = keys[idx];
    }
    ++idx;
    if (sign == "+" || sign == "+1" || sign == "1")
      out[p] = 1;
    else if (sign == "-" || sign == "-1")
      out[p] = -1;
    else
      throw UsageError("bad sign '" + sign + "' in --eps");
  }
  if (out.size() != keys.size()) throw UsageError("--eps needs one sign for 2 and each odd prime dividing N/4");
  return out;
}

DiscriminantForm resolve_form(const FormOptions& o) {
  DiscriminantForm D;
  if (!o.genus.empty()) {
    try {
      D = parse_genus(o.genus);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (o.level && o.level != D.level()) throw UsageError("--level disagrees with --genus");
    if (!is_supported_level(D.level())) throw UnsupportedLevel("unsupported level " + std::to_string(D.level()));
  } else {
    if (o.level <= 0) throw UsageError("either --level or --genus is required");
    if (!is_supported_level(o.level)) throw UnsupportedLevel("unsupported level " + std::to_string(o.level));
    D = form_from_epsilon(o.level, parse_eps(o.eps, o.level));
  }
  return o.dual ? dual(D) : D;
}

Rational resolve_weight(const FormOptions& o, const DiscriminantForm& D) {
  if (o.weight.empty()) return D.signature() % 4 == 1 ? make_rational(1, 2) : make_rational(3, 2);
  try {
    return parse_rational(o.weight);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// "f_-3+f_0", "12*f_0" -> {m: coefficient}
std::map<int64_t, Rational> parse_combination(const std::string& s) {
  std::map<int64_t, Rational> out;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '+')) {
    Rational c = 1;
    auto star = term.find('*');
    std::string f = term;
    if (star != std::string::npos) {
      c = parse_rational(term.substr(0, star));
      f = term.substr(star + 1);
    }
    if (f.rfind("f_", 0) == 0) f = f.substr(2);
    try {
      size_t used = 0;
      int64_t m = std::stoll(f, &used);
      if (used != f.size()) throw std::invalid_argument(f);
      out[m] += c;
    } catch (const std::exception&) {
      throw UsageError("bad form name '" + term + "' (expected f_m or c*f_m)");
    }
  }
  if (out.empty()) throw UsageError("empty --form");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const Common& c, const std::string& payload, std::ostream& out) {
  if (c.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.output);
  f << payload;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string eps_text(const std::map<int64_t, int>& eps) {
  std::string s;
  for (auto& [p, v] : eps) s += (s.empty() ? "" : " ") + std::to_string(p) + ":" + (v > 0 ? "+" : "-");
  return s;
}

std::string basis_text(const ReducedBasis& b) {
  std::ostringstream os;
  os << "level " << b.spec.N << ", weight " << b.spec.k.get_str() << ", genus " << genus_symbol(b.spec.D)
     << ", eps " << eps_text(b.spec.eps.eps) << "\n";
  for (auto& [m, f] : b.forms) os << "f_" << m << " = " << to_text(f) << "\n";
  os << "exists:";
  for (auto m : b.exists) os << " " << m;
  os << "\nobstructed:";
  for (auto m : b.obstructed) os << " " << m;
  os << "\n";
  return os.str();
}

int64_t checked_order(int64_t order, int64_t min_exp) {
  if (order < std::abs(min_exp) + 16)
    throw UsageError("--order must be at least |min-exp| + 16 = " + std::to_string(std::abs(min_exp) + 16));
  return order;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-integral weight forms, Weil representations and Borcherds lifts", "weilform"};
  app.require_subcommand(1);

  FormOptions bo;
  Common bc;
  int64_t b_min = 0, b_order = 0;
  std::string b_kind = "weak";
  auto* basis = app.add_subcommand("basis", "reduced basis of an eps-space");
  add_form_options(basis, bo);
  add_common(basis, bc);
  basis->add_option("--min-exp", b_min, "lowest leading exponent (<= 0)");
  basis->add_option("--order", b_order, "truncation order");
  basis->add_option("--kind", b_kind)->check(CLI::IsMember({"weak", "holomorphic", "cuspidal"}));

  FormOptions dopt;
  Common dc;
  int64_t d_range = 12, d_order = 0;
  std::string d_input, d_dual_input;
  auto* duality = app.add_subcommand("duality", "check a_m(-d) = -a*_d(-m)");
  add_form_options(duality, dopt, false);
  add_common(duality, dc);
  duality->add_option("--range", d_range, "largest |m|, |d|");
  duality->add_option("--order", d_order, "truncation order");
  duality->add_option("--input", d_input, "weight-k basis JSON to use instead of computing it");
  duality->add_option("--dual-input", d_dual_input, "dual basis JSON to use instead of computing it");

  FormOptions lo;
  Common lc;
  std::string l_form = "f_0", l_pool;
  int64_t l_order = 30;
  auto* liftc = app.add_subcommand("lift", "Borcherds product of a reduced form");
  add_form_options(liftc, lo, false);
  add_common(liftc, lc);
  liftc->add_option("--form", l_form, "f_m, c*f_m or sums such as f_-3+f_0");
  liftc->add_option("--order", l_order, "number of product factors");
  liftc->add_option("--eta-pool", l_pool, "comma separated eta levels (default: divisors of 6M)");

  Common hc;
  int64_t h_max = 20, h_min = 0;
  auto* hurw = app.add_subcommand("hurwitz", "Hurwitz class numbers");
  add_common(hurw, hc);
  hurw->add_option("--max", h_max, "largest n");
  hurw->add_option("--min", h_min, "smallest n");

  FormOptions wo;
  Common wc;
  double w_tol = 1e-9;
  auto* weil = app.add_subcommand("weil-check", "Weil representation relation residuals");
  add_form_options(weil, wo, false);
  add_common(weil, wc);
  weil->add_option("--tolerance", w_tol, "largest acceptable residual");

  FormOptions io;
  Common ic;
  std::string i_form = "f_0", i_dir = "psi", i_input;
  int64_t i_order = 0, i_min = 0;
  auto* iso = app.add_subcommand("iso", "scalar <-> vector-valued isomorphism");
  add_form_options(iso, io);
  add_common(iso, ic);
  iso->add_option("--form", i_form, "reduced form f_m");
  iso->add_option("--direction", i_dir)->check(CLI::IsMember({"psi", "phi"}));
  iso->add_option("--input", i_input, "vector form JSON (phi direction)");
  iso->add_option("--order", i_order, "truncation order");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*basis) {
      DiscriminantForm D = resolve_form(bo);
      Rational k = resolve_weight(bo, D);
      SpaceKind kind = b_kind == "weak" ? SpaceKind::weak
                       : b_kind == "holomorphic" ? SpaceKind::holomorphic
                                                 : SpaceKind::cuspidal;
      int64_t order = checked_order(b_order ? b_order : default_order(), b_min);
      ReducedBasis b = build_basis(make_space(D, k, kind), b_min, order);
      emit(bc, bc.format == "json" ? dump(basis_to_json(b)) : basis_text(b), out);
      return kExitOk;
    }
    if (*duality) {
      DiscriminantForm D = resolve_form(dopt);
      Rational k = D.signature() % 4 == 1 ? make_rational(1, 2) : make_rational(3, 2);
      int64_t order = checked_order(d_order ? d_order : default_order(), d_range);
      ReducedBasis A = d_input.empty() ? build_basis(make_space(D, k), -d_range, order)
                                       : basis_from_json(parse_json_file(d_input));
      ReducedBasis B = d_dual_input.empty() ? build_basis(make_space(dual(D), 2 - k), -d_range, order)
                                            : basis_from_json(parse_json_file(d_dual_input));
      if (!(A.spec.D == D) || !(B.spec.D == dual(D)))
        throw UsageError("input bases do not match the requested discriminant form and its dual");
      DualityReport rep = duality_check(A, B, d_range);
      if (dc.format == "json") {
        emit(dc, dump(duality_to_json(rep)), out);
      } else {
        std::ostringstream os;
        os << "m d a_m(-d) a*_d(-m) ok\n";
        for (auto& e : rep.entries)
          os << e.m << " " << e.d << " " << e.a.get_str() << " " << e.a_star.get_str() << " "
             << (e.ok() ? "yes" : "NO") << "\n";
        os << "pairs " << rep.entries.size() << ", violations " << rep.violations() << "\n";
        emit(dc, os.str(), out);
      }
      if (rep.violations()) {
        err << "error: Zagier duality violated for " << rep.violations() << " pair(s)\n";
        return kExitInconsistent;
      }
      return kExitOk;
    }
    if (*liftc) {
      DiscriminantForm D = resolve_form(lo);
      if (D.signature() % 4 != 1) throw UsageError("lift needs the weight 1/2 side (signature 1 mod 4)");
      auto combo = parse_combination(l_form);
      int64_t lo_m = std::min<int64_t>(combo.begin()->first, 0);
      if (l_order < 1) throw UsageError("--order must be positive");
      EpsilonSpaceSpec spec = make_space(D, make_rational(1, 2));
      int64_t trunc = std::max((l_order - 1) * (l_order - 1) + 1, elimination_bound(spec, lo_m));
      trunc = std::max(trunc, std::abs(lo_m) + 16);
      ReducedBasis b = build_basis(spec, lo_m, trunc);
      FracQSeries f(1, trunc);
      for (auto& [m, c] : combo) {
        if (!b.has(m)) throw UsageError("no reduced form f_" + std::to_string(m));
        f = add(f, b.form(m).scaled(c));
      }
      BorcherdsLift L = lift(D, f, l_order);
      std::vector<int64_t> pool = default_eta_pool(D);
      if (!l_pool.empty()) {
        pool.clear();
        std::stringstream ss(l_pool);
        std::string item;
        while (std::getline(ss, item, ',')) pool.push_back(std::stoll(item));
      }
      L.eta_match = eta_quotient_match(L, pool);
      if (lc.format == "json") {
        emit(lc, dump(lift_to_json(L)), out);
      } else {
        std::ostringstream os;
        os << "weight " << L.weight.get_str() << "\nrho " << L.weyl_rho.get_str() << "\nexponents";
        for (auto& [n, e] : L.exponents) os << " " << n << ":" << e.get_str();
        os << "\nexpansion " << to_text(L.expansion) << "\ndivisors";
        for (auto& [d, o] : L.divisors) os << " " << d << ":" << o.get_str();
        os << "\neta_match " << to_string(L.eta_match->kind);
        for (auto& [d, r] : L.eta_match->exponents) os << " " << d << ":" << r;
        if (L.eta_match->kind == EtaMatchKind::cofactor) os << "\ncofactor " << to_text(L.eta_match->cofactor);
        os << "\n";
        emit(lc, os.str(), out);
      }
      return kExitOk;
    }
    if (*hurw) {
      if (h_min < 0 || h_max < h_min) throw UsageError("need 0 <= --min <= --max");
      std::map<int64_t, Rational> vals;
      for (int64_t n = h_min; n <= h_max; ++n) vals[n] = hurwitz(n);
      if (hc.format == "json") {
        emit(hc, dump(hurwitz_to_json(vals)), out);
      } else {
        std::ostringstream os;
        for (auto& [n, h] : vals) os << n << " " << h.get_str() << "\n";
        emit(hc, os.str(), out);
      }
      return kExitOk;
    }
    if (*weil) {
      DiscriminantForm D;
      if (!wo.genus.empty()) {
        try {
          D = parse_genus(wo.genus);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        if (wo.dual) D = dual(D);
      } else {
        D = resolve_form(wo);
      }
      if (D.order() > 4096) throw UsageError("weil-check is limited to |D| <= 4096");
      WeilRep W(D);
      RelationResiduals r = relation_residuals(W);
      if (wc.format == "json") {
        emit(wc, dump(residuals_to_json(genus_symbol(D), W.dim(), r)), out);
      } else {
        std::ostringstream os;
        os.precision(3);
        os << std::scientific;
        os << "genus " << genus_symbol(D) << ", |D| = " << W.dim() << "\n"
           << "unitarity " << r.unitarity << "\nS^2 = Z " << r.s2_z << "\n(ST)^3 = Z " << r.st3_z
           << "\nZ^4 = I " << r.z4_i << "\nZ^2 T = T Z^2 " << r.z2t << "\nZ permutation " << r.z_perm
           << "\nmax " << r.max() << "\n";
        emit(wc, os.str(), out);
      }
      if (!(r.max() < w_tol)) {
        err << "error: relation residual " << r.max() << " exceeds " << w_tol << "\n";
        return kExitInconsistent;
      }
      return kExitOk;
    }
    if (*iso) {
      if (i_dir == "phi" && !i_input.empty()) {
        VectorForm F = vector_from_json(parse_json_file(i_input));
        FracQSeries f = phi(F);
        emit(ic, ic.format == "json" ? dump(series_to_json(f)) : to_text(f) + "\n", out);
        return kExitOk;
      }
      DiscriminantForm D = resolve_form(io);
      Rational k = resolve_weight(io, D);
      auto combo = parse_combination(i_form);
      i_min = std::min<int64_t>(combo.begin()->first, 0);
      int64_t order = checked_order(i_order ? i_order : default_order(), i_min);
      ReducedBasis b = build_basis(make_space(D, k), i_min, order);
      FracQSeries f(1, order);
      for (auto& [m, c] : combo) {
        if (!b.has(m)) throw UsageError("no reduced form f_" + std::to_string(m));
        f = add(f, b.form(m).scaled(c));
      }
      VectorForm F = psi(D, f, k);
      if (!check_T(F)) throw MathInconsistency("psi output fails the T-transformation check");
      if (i_dir == "psi") {
        if (ic.format == "json") {
          emit(ic, dump(vector_to_json(F)), out);
        } else {
          std::ostringstream os;
          for (size_t c = 0; c < F.components.size(); ++c)
            os << "norm " << F.classes.class_norm[c].get_str() << " (size " << F.classes.class_size[c]
               << "): " << to_text(F.components[c]) << "\n";
          emit(ic, os.str(), out);
        }
        return kExitOk;
      }
      FracQSeries back = phi(F);
      if (back != f) throw MathInconsistency("phi(psi(f)) differs from f");
      emit(ic, ic.format == "json" ? dump(series_to_json(back)) : to_text(back) + "\n", out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedLevel& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const InsufficientOrder& e) {
    err << "error: insufficient order: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathInconsistency& e) {
    err << "error: mathematical inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace weilform
