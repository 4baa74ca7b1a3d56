#include "cuspforge/report.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cf {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

}  // namespace

DessinFormatError::DessinFormatError(std::vector<std::string> v)
    : std::runtime_error("invalid dessin: " + join(v)), violations(std::move(v)) {}

Dessin dessin_from_json(const ojson& j) {
  std::vector<std::string> bad;
  if (!j.is_object()) throw DessinFormatError({"top level must be an object"});
  for (const char* key : {"n", "piA", "piB"})
    if (!j.contains(key)) bad.push_back(std::string("missing field ") + key);
  if (!bad.empty()) throw DessinFormatError(bad);
  if (!j["n"].is_number_integer()) throw DessinFormatError({"n must be an integer"});
  int n = j["n"].get<int>();
  Perm p[2];
  const char* names[2] = {"piA", "piB"};
  for (int k = 0; k < 2; ++k) {
    const auto& a = j[names[k]];
    if (!a.is_array()) {
      bad.push_back(std::string(names[k]) + " must be an array");
      continue;
    }
    for (const auto& e : a) {
      if (!e.is_number_integer()) {
        bad.push_back(std::string(names[k]) + " has a non-integer entry");
        break;
      }
      p[k].push_back(e.get<int>());
    }
  }
  if (!bad.empty()) throw DessinFormatError(bad);
  Dessin d(n, p[0], p[1]);
  auto v = validate(d);
  if (!v.empty()) throw DessinFormatError(v);
  return d;
}

ojson dessin_to_json(const Dessin& d) {
  ojson j;
  j["n"] = d.n();
  j["piA"] = d.piA();
  j["piB"] = d.piB();
  return j;
}

Dessin load_dessin(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ojson j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DessinFormatError({std::string("malformed JSON: ") + e.what()});
  }
  return dessin_from_json(j);
}

RatDivisor parse_divisor(const HomologyContext& h, const FermatLabels* lab, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto D = RatDivisor::zero(h.ct.size());
  if (s.empty() || s == "0") return D;
  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("divisor: expected + or - at position " + std::to_string(i));
    }
    first = false;
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("divisor: empty term");
    Rat coef(1);
    std::string label = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coef = parse_rat(term.substr(0, star));
      label = term.substr(star + 1);
    }
    int cusp = -1;
    if (lab) cusp = lab->parse_name(label);
    if (cusp < 0) cusp = h.ct.find_label(label);
    if (cusp < 0) throw std::invalid_argument("divisor: unknown cusp label '" + label + "'");
    D.m[cusp] += coef * sign;
    i = j;
  }
  if (D.degree() != 0) throw std::invalid_argument("divisor must have degree 0, got " + rat_to_string(D.degree()));
  return D;
}

std::string format_divisor(const HomologyContext& h, const FermatLabels* lab, const RatDivisor& D) {
  if (!lab) return divisor_to_string(h, D);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < h.ct.size(); ++i) {
    if (D.m[i] == 0) continue;
    Rat c = D.m[i];
    if (!first)
      os << (c > 0 ? " + " : " - ");
    else if (c < 0)
      os << "-";
    if (abs(c) != 1) os << rat_to_string(abs(c)) << "*";
    os << lab->name_of(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

ojson conventions_json() {
  ojson c;
  c["boundary"] = "boundary(E_D) = -D";
  c["actions"] = "right actions of A = (1 2; 0 1) and B = (1 0; 2 1) on cosets";
  c["one_kind_operator"] = "orbits of x -> piAinv[piB[x]]";
  c["cusp_order"] = "zero, one, infinity; each block by minimum coset";
  c["lambda"] = "lambda(z) = lambda_classical(z + 1): lambda(inf) = 0, lambda(0) = inf, lambda(1) = 1";
  c["phi_phase"] = "exp(2 pi i r d / c)";
  return c;
}

ojson params_json(const TruncationParams& p) {
  ojson j;
  j["cmax"] = p.c_max;
  j["rmax"] = p.r_max;
  j["s"] = p.s;
  j["eps"] = p.eps;
  j["steps"] = p.quad_steps;
  j["bits"] = p.precision_bits;
  return j;
}

ojson structure_json(const AbelianStructure& a) {
  ojson j;
  j["structure"] = a.to_string();
  j["free_rank"] = a.free_rank;
  std::vector<std::string> f;
  for (const auto& x : a.invariant_factors) f.push_back(x.str());
  j["invariant_factors"] = f;
  j["torsion_order"] = a.torsion_order().str();
  return j;
}

ojson analyze_report(const Dessin& d) {
  ojson r;
  auto v = validate(d);
  r["n"] = d.n();
  if (!v.empty()) {
    r["validation"] = {{"valid", false}, {"violations", v}};
    return r;
  }
  CuspTable ct = cusps(d);
  r["genus"] = genus(d);
  r["cusps"] = {{"zero", ct.count(CuspKind::Zero)},
                {"one", ct.count(CuspKind::One)},
                {"infinity", ct.count(CuspKind::Infinity)}};
  ojson list = ojson::array();
  for (const auto& c : ct.cusps)
    list.push_back({{"label", c.label()}, {"kind", kind_name(c.kind)}, {"width", c.width}, {"orbit", c.orbit}});
  r["cusp_list"] = list;
  r["validation"] = {{"valid", true}, {"violations", ojson::array()}};
  r["conventions"] = conventions_json();
  return r;
}

ojson fermat_report(int N, bool& ok) {
  ok = true;
  FermatLabels lab(N);
  const HomologyContext& h = lab.context();
  ojson r;
  r["N"] = N;
  r["n"] = h.n();
  r["genus"] = genus(h.d);
  ojson checks;
  auto check = [&](const char* name, bool pass) {
    checks[name] = pass ? "PASS" : "FAIL";
    ok = ok && pass;
  };
  check("index_is_N_squared", h.n() == N * N);
  bool widths = true;
  for (const auto& c : h.ct.cusps) widths = widths && c.width == N;
  check("cusps_per_kind_N", h.ct.count(CuspKind::Zero) == N && h.ct.count(CuspKind::One) == N &&
                                h.ct.count(CuspKind::Infinity) == N);
  check("all_widths_N", widths);
  check("genus_formula", genus(h.d) == (N - 1) * (N - 2) / 2);
  std::vector<char> seen(static_cast<size_t>(h.ct.size()) * h.ct.size(), 0);
  bool bij = true;
  for (int x = 0; x < h.n(); ++x) {
    auto& s = seen[static_cast<size_t>(h.ct.zero_of[x]) * h.ct.size() + h.ct.inf_of[x]];
    bij = bij && !s;
    s = 1;
  }
  check("coset_cusp_pair_bijection", bij);
  r["checks"] = checks;
  ojson labels;
  for (int i = 0; i < h.ct.size(); ++i) labels[lab.name_of(i)] = h.ct.cusps[i].label();
  r["labels"] = labels;
  ojson units = ojson::array();
  auto names = fermat_unit_names(N);
  auto lit = fermat_unit_divisors(lab);
  auto geo = fermat_unit_divisors_geometric(lab);
  for (size_t i = 0; i < names.size(); ++i)
    units.push_back({{"unit", names[i]},
                     {"divisor_as_stated", format_divisor(h, &lab, lit[i])},
                     {"divisor_located", format_divisor(h, &lab, geo[i])}});
  r["unit_divisors"] = units;
  if (N % 2 == 1) {
    ojson rel = ojson::array();
    auto rd = rohrlich_relation_divisors(lab);
    auto rn = rohrlich_relation_names();
    for (size_t i = 0; i < rd.size(); ++i) rel.push_back({{"name", rn[i]}, {"divisor", format_divisor(h, &lab, rd[i])}});
    r["relations"] = rel;
  }
  r["conventions"] = conventions_json();
  return r;
}

ojson cuspidal_report(int N, const std::string& jacobian, bool& pass) {
  AbelianStructure got, want;
  if (jacobian == "full") {
    got = cuspidal_group_full(N);
    want = cyclic_power(Int(N), 3 * N - 7);
  } else if (jacobian == "minus") {
    got = cuspidal_group_minus(N);
    want = cyclic_power(Int(N), 2 * N - 2);
  } else if (jacobian == "plus") {
    got = cuspidal_group_plus(N);
    want = cyclic_power(Int(2 * N), N - 1);
  } else {
    throw std::invalid_argument("jacobian must be full, plus or minus");
  }
  pass = got == want;
  ojson r;
  r["N"] = N;
  r["jacobian"] = jacobian;
  r["computed"] = structure_json(got);
  r["predicted"] = structure_json(want);
  r["result"] = pass ? "PASS" : "FAIL";
  if (jacobian != "full") {
    FermatLabels lab(N);
    auto t = analyze_theta(lab, jacobian == "minus" ? Side::Plus : Side::Minus);
    r["theta"] = {{"modulus", t.modulus.str()},
                  {"domain_rank", t.domain_rank},
                  {"image", structure_json(t.image)},
                  {"kernel_order", t.kernel_order.str()}};
  }
  r["conventions"] = conventions_json();
  return r;
}

ojson verdict_json(const TorsionVerdict& v) {
  ojson j;
  j["status"] = torsion_status_name(v.status);
  if (v.is_torsion()) {
    j["order"] = v.order.str();
    if (v.jacobian_order != 0) j["jacobian_order"] = v.jacobian_order.str();
  }
  if (!v.diagnostics.empty()) j["diagnostics"] = v.diagnostics;
  return j;
}

namespace {

ojson coeffs_json(const HomologyContext& h, const RatSymbols& v, int N) {
  ojson c;
  for (int x = 0; x < h.n(); ++x) {
    std::string key = N > 0 ? "(" + std::to_string(x % N) + "," + std::to_string(x / N) + ")" : std::to_string(x);
    c[key] = rat_to_string(v.c[x]);
  }
  return c;
}

ojson oracle_json(const OracleReport& o) {
  ojson j;
  j["ran"] = o.ran;
  if (o.ran) {
    j["cosets"] = o.cosets;
    j["max_abs_difference"] = o.max_diff;
    j["max_error_estimate"] = o.max_error;
    j["tolerance"] = o.tolerance;
    j["agree"] = o.agree;
  }
  return j;
}

}  // namespace

ojson eisenstein_report(const FermatLabels& lab, const RatDivisor& D, CycleMode mode, const OracleOptions& oracle) {
  const HomologyContext& h = lab.context();
  ojson r;
  r["N"] = lab.N();
  r["divisor"] = format_divisor(h, &lab, D);
  r["mode"] = mode_name(mode);
  r["labels_swapped"] = lab.swapped();
  EisensteinCycle c;
  if (mode == CycleMode::Calibrated) {
    c = fermat_cycle(lab, D, oracle);
  } else {
    // the displayed combinations exist for (a_j) - (c_k) and (b_j) - (b_k)
    int pos = -1, neg = -1, count = 0;
    for (int i = 0; i < h.ct.size(); ++i) {
      if (D.m[i] == 0) continue;
      ++count;
      if (D.m[i] == 1) pos = i;
      if (D.m[i] == -1) neg = i;
    }
    if (count == 0) {
      c = fermat_cycle_bb(lab, 0, 0, mode, oracle);
    } else if (count == 2 && pos >= 0 && neg >= 0) {
      std::string p = lab.name_of(pos), q = lab.name_of(neg);
      int j = std::stoi(p.substr(1)), k = std::stoi(q.substr(1));
      if (p[0] == 'a' && q[0] == 'c')
        c = fermat_cycle_ac(lab, j, k, mode, oracle);
      else if (p[0] == 'b' && q[0] == 'b')
        c = fermat_cycle_bb(lab, j, k, mode, oracle);
      else
        throw std::invalid_argument("paper_literal mode covers (a_j) - (c_k) and (b_j) - (b_k) only");
    } else {
      throw std::invalid_argument("paper_literal mode covers (a_j) - (c_k) and (b_j) - (b_k) only");
    }
  }
  r["side"] = side_name(c.side);
  r["coeffs"] = coeffs_json(h, c.real_part, lab.N());
  std::string bc = boundary_check(h, c);
  r["boundary_check"] = bc;
  r["boundary"] = format_divisor(h, &lab, boundary(h, c.real_part));
  r["matches_statement_sign_plus_D"] = bc == "+D";
  if (bc == "FAIL")
    r["note"] = "the boundary of this combination is neither -D nor +D; the calibrated mode gives the boundary-correct cycle";
  r["imag_norm"] = c.imag_norm;
  r["torsion"] = verdict_json(torsion_order(h, c));
  r["oracle"] = oracle_json(c.oracle);
  if (mode == CycleMode::PaperLiteral && !D.is_zero()) {
    OracleOptions off = oracle;
    off.enabled = false;
    EisensteinCycle cal = fermat_cycle(lab, D, off);
    RatVec diff(h.n());
    for (int x = 0; x < h.n(); ++x) diff[x] = c.real_part.c[x] - cal.real_part.c[x];
    RowSpace L(lambda_span(h, c.side), h.n());
    bool agree = L.contains(diff);
    r["comparison"] = {{"agrees_with_calibrated_modulo_lambda_span", agree},
                       {"flag", agree ? "none" : "displayed combination differs from the calibrated cycle"}};
  }
  r["conventions"] = conventions_json();
  return r;
}

ojson manin_report(const HomologyContext& h, bool& pass) {
  ManinPresentation mp = manin_presentation(h);
  int g = genus(h.d);
  int expected = 2 * g + h.ct.size() - 1;
  pass = mp.quotient_rank == expected;
  ojson r;
  r["n"] = h.n();
  r["symbols"] = mp.size;
  r["relations"] = static_cast<int>(mp.relations.size());
  r["rank"] = mp.quotient_rank;
  r["expected_rank_2g_plus_c_minus_1"] = expected;
  r["result"] = pass ? "PASS" : "FAIL";
  r["conventions"] = conventions_json();
  return r;
}

ojson full_cycle_json(const HomologyContext& h, const FullCycle& fc) {
  ojson r;
  r["E0"] = divisor_to_string(h, fc.split.E0);
  r["Einf"] = divisor_to_string(h, fc.split.Einf);
  ojson v;
  for (size_t i = 0; i < fc.v.size(); ++i) {
    if (fc.v[i].mid == 0 && fc.v[i].rad == 0) continue;
    std::string key = std::to_string(i / 6) + ":" + std::to_string(i % 6);
    if (fc.v[i].rad == 0)
      v[key] = rat_to_string(fc.v[i].mid);
    else
      v[key] = {{"value", fc.v[i].mid.convert_to<double>()}, {"error_estimate", fc.v[i].rad.convert_to<double>()}};
  }
  r["symbols"] = v;
  return r;
}

}  // namespace cf
