#include "cuspforge/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

using namespace cf;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalidDessin = 2, kIo = 3, kMismatch = 4, kOracle = 5 };

struct Common {
  int N = 0;
  std::string dessin_path;
  std::string out;
  TruncationParams p = TruncationParams::defaults();
};

void add_input(CLI::App* sc, Common& c) {
  auto* n = sc->add_option("--N", c.N, "Fermat level");
  auto* d = sc->add_option("--dessin", c.dessin_path, "dessin JSON file");
  n->excludes(d);
  d->excludes(n);
}

void add_params(CLI::App* sc, Common& c) {
  sc->add_option("--cmax", c.p.c_max, "bound on lower-left entries");
  sc->add_option("--rmax", c.p.r_max, "Fourier truncation");
  sc->add_option("--s", c.p.s, "evaluation abscissa");
  sc->add_option("--eps", c.p.eps, "cusp offset");
  sc->add_option("--steps", c.p.quad_steps, "quadrature nodes");
  sc->add_option("--bits", c.p.precision_bits, "working precision");
}

Dessin input_dessin(const Common& c) {
  if (!c.dessin_path.empty()) return load_dessin(c.dessin_path);
  if (c.N <= 0) throw std::invalid_argument("exactly one of --N (positive) or --dessin is required");
  return from_fermat(c.N);
}

void emit(const ojson& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw IoError("cannot write " + out);
  f << text;
  if (!f) throw IoError("write failed for " + out);
}

ojson cx_json(const std::complex<double>& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ojson cx_json(const Cx& z) {
  return {{"re", z.re.convert_to<double>()}, {"im", z.im.convert_to<double>()}, {"digits", cx_to_string(z, 30)}};
}

Side side_of(const HomologyContext& h, const RatDivisor& D) {
  bool plus = false, minus = false;
  for (int i = 0; i < h.ct.size(); ++i) {
    if (D.m[i] == 0) continue;
    (h.ct.is_plus(i) ? plus : minus) = true;
  }
  if (plus && minus) throw std::invalid_argument("divisor must be supported on one side");
  return minus ? Side::Minus : Side::Plus;
}

int cusp_arg(const HomologyContext& h, const FermatLabels* lab, const std::string& s) {
  int c = lab ? lab->parse_name(s) : -1;
  if (c < 0) c = h.ct.find_label(s);
  if (c < 0) {
    try {
      size_t pos = 0;
      int v = std::stoi(s, &pos);
      if (pos == s.size() && v >= 0 && v < h.ct.size()) c = v;
    } catch (const std::exception&) {
    }
  }
  if (c < 0) throw std::invalid_argument("unknown cusp '" + s + "'");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein cycles and cuspidal groups for subgroups of Gamma(2)"};
  app.require_subcommand(1);
  Common c;

  auto* analyze = app.add_subcommand("analyze", "index, cusps, genus and validation of a dessin");
  add_input(analyze, c);
  analyze->add_option("--out", c.out);

  auto* fermat = app.add_subcommand("fermat-report", "geometry checks and unit divisors of the Fermat dessin");
  fermat->add_option("--N", c.N)->required();
  fermat->add_option("--out", c.out);

  std::string jacobian = "full";
  auto* cusp = app.add_subcommand("cuspidal", "cuspidal subgroup structure via Smith form");
  cusp->add_option("--N", c.N)->required();
  cusp->add_option("--jacobian", jacobian)->check(CLI::IsMember({"full", "plus", "minus"}));
  cusp->add_option("--out", c.out);

  std::string divisor, mode = "calibrated";
  bool no_oracle = false, swap = false;
  double tol = 1e-6;
  auto* eis = app.add_subcommand("eisenstein", "Eisenstein cycle of a Fermat divisor");
  eis->add_option("--N", c.N)->required();
  eis->add_option("--divisor", divisor)->required();
  eis->add_option("--mode", mode)->check(CLI::IsMember({"calibrated", "paper_literal"}));
  eis->add_flag("--no-oracle", no_oracle, "skip the contour oracle");
  eis->add_flag("--swap-labels", swap, "a_j infinity-kind, c_k zero-kind");
  eis->add_option("--tol", tol, "oracle tolerance");
  eis->add_option("--out", c.out);
  add_params(eis, c);

  auto* manin = app.add_subcommand("manin", "Manin presentation rank");
  add_input(manin, c);
  manin->add_option("--out", c.out);

  std::string provider = "exact";
  std::string den_bound = "1000000";
  auto* md = app.add_subcommand("md-check", "full-curve cycle and Manin-Drinfeld torsion check");
  md->add_option("--N", c.N)->required();
  md->add_option("--divisor", divisor)->required();
  md->add_option("--provider", provider)->check(CLI::IsMember({"exact", "numeric"}));
  md->add_option("--den-bound", den_bound);
  md->add_option("--tol", tol);
  md->add_option("--out", c.out);
  add_params(md, c);

  std::string kind = "phi", j_s = "0", k_s = "0", k2_s, x_s = "0", norm = "pi";
  int r = 0;
  bool sweep = false;
  std::string unit = "lambda_itself";
  int unit_j = 0;
  auto* num = app.add_subcommand("numeric", "estimators: phi, sD, scholl, scattering, contour, lambda");
  add_input(num, c);
  num->add_option("--kind", kind)->check(CLI::IsMember({"phi", "sD", "scholl", "scattering", "contour", "lambda"}));
  num->add_option("--j", j_s, "cusp (label, a/b/c name or index)");
  num->add_option("--k", k_s);
  num->add_option("--k2", k2_s);
  num->add_option("--r", r);
  num->add_option("--x", x_s, "rational cusp for sD");
  num->add_option("--divisor", divisor);
  num->add_option("--normalization", norm)->check(CLI::IsMember({"pi", "pi_to_s"}));
  num->add_flag("--eps-sweep", sweep, "sD over eps in {1e-2, 1e-3, 1e-4}");
  num->add_option("--unit", unit, "unit family for a single contour");
  num->add_option("--unit-j", unit_j);
  std::string z_s = "0,1";
  num->add_option("--z", z_s, "point re,im for --kind lambda");
  num->add_option("--out", c.out);
  add_params(num, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) {
      Dessin d = input_dessin(c);
      emit(analyze_report(d), c.out);
      return kOk;
    }
    if (*fermat) {
      bool ok = false;
      ojson j = fermat_report(c.N, ok);
      emit(j, c.out);
      return ok ? kOk : kMismatch;
    }
    if (*cusp) {
      if (jacobian == "full" && c.N % 2 == 0) throw std::invalid_argument("the full Jacobian needs odd N");
      bool pass = false;
      ojson j = cuspidal_report(c.N, jacobian, pass);
      emit(j, c.out);
      return pass ? kOk : kMismatch;
    }
    if (*eis) {
      validate(c.p);
      FermatLabels lab(c.N, swap);
      RatDivisor D = parse_divisor(lab.context(), &lab, divisor);
      OracleOptions o;
      o.enabled = !no_oracle;
      o.params = c.p;
      o.tolerance = tol;
      ojson j;
      int code = kOk;
      try {
        j = eisenstein_report(lab, D, parse_mode(mode), o);
      } catch (const OracleDisagreement& e) {
        j["divisor"] = format_divisor(lab.context(), &lab, D);
        j["error"] = e.what();
        j["oracle"] = {{"max_abs_difference", e.report.max_diff},
                       {"max_error_estimate", e.report.max_error},
                       {"tolerance", e.report.tolerance},
                       {"agree", false}};
        code = kOracle;
      }
      if (code == kOk && j.contains("boundary_check") && j["boundary_check"] != "-D") code = kMismatch;
      j["params"] = params_json(c.p);
      emit(j, c.out);
      return code;
    }
    if (*manin) {
      HomologyContext h(input_dessin(c));
      bool pass = false;
      ojson j = manin_report(h, pass);
      emit(j, c.out);
      return pass ? kOk : kMismatch;
    }
    if (*md) {
      validate(c.p);
      FermatLabels lab(c.N);
      const HomologyContext& h = lab.context();
      RatDivisor D = parse_divisor(h, &lab, divisor);
      FProvider prov = provider == "exact" ? exact_fermat_provider() : numeric_fermat_provider(c.N, c.p);
      FullCycle fc = assemble_full_cycle(h, D, prov);
      ManinPresentation mp = manin_presentation(h);
      RatVec mids;
      for (const auto& x : fc.v) mids.push_back(x.mid);
      RatDivisor bd = full_boundary(mp, mids);
      RatDivisor negD = D;
      for (auto& m : negD.m) m = -m;
      // each symbol touches two cusps with coefficient +-1, so the total radius bounds every entry
      Rat slack = 0;
      for (const auto& x : fc.v) slack += x.rad;
      auto near = [&](const RatDivisor& want) {
        for (size_t i = 0; i < want.m.size(); ++i)
          if (abs(bd.m[i] - want.m[i]) > slack) return false;
        return true;
      };
      std::string bc = near(negD) ? "-D" : (near(D) ? "+D" : "FAIL");
      TorsionVerdict v = manin_drinfeld_check(mp, fc.v, Int(den_bound), tol);
      ojson j;
      j["N"] = c.N;
      j["divisor"] = format_divisor(h, &lab, D);
      j["provider"] = provider;
      j["cycle"] = full_cycle_json(h, fc);
      j["boundary_check"] = bc;
      j["verdict"] = verdict_json(v);
      j["den_bound"] = den_bound;
      j["tolerance"] = tol;
      j["params"] = params_json(c.p);
      j["conventions"] = conventions_json();
      emit(j, c.out);
      return bc == "-D" && v.status != TorsionStatus::Indeterminate ? kOk : kMismatch;
    }
    if (*num) {
      validate(c.p);
      ojson j;
      j["kind"] = kind;
      if (kind == "lambda") {
        auto comma = z_s.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--z expects re,im");
        PrecisionGuard g(c.p.precision_bits);
        Cx z(Real(z_s.substr(0, comma)), Real(z_s.substr(comma + 1)));
        LambdaValue lv = modular_lambda(z, c.p.precision_bits);
        j["z"] = z_s;
        j["value"] = cx_json(lv.lambda);
        j["one_minus"] = cx_json(lv.one_minus);
        j["error_estimate"] = std::ldexp(1.0, -c.p.precision_bits + 8);
        j["params"] = params_json(c.p);
        emit(j, c.out);
        return kOk;
      }
      std::unique_ptr<FermatLabels> lab;
      std::unique_ptr<HomologyContext> own;
      if (c.dessin_path.empty()) {
        lab = std::make_unique<FermatLabels>(c.N > 0 ? c.N : 1);
      } else {
        own = std::make_unique<HomologyContext>(load_dessin(c.dessin_path));
      }
      const HomologyContext& h = lab ? lab->context() : *own;
      const FermatLabels* lp = lab.get();
      if (kind == "phi") {
        int jj = cusp_arg(h, lp, j_s), kk = cusp_arg(h, lp, k_s);
        PhiValue v = phi_truncated(h.d, h.ct, jj, kk, r, c.p.s, c.p.c_max);
        j["j"] = h.ct.cusps[jj].label();
        j["k"] = h.ct.cusps[kk].label();
        j["r"] = r;
        j["value"] = cx_json(v.value);
        j["error_estimate"] = v.tail;
        j["terms"] = v.terms;
      } else if (kind == "sD") {
        RatDivisor D = parse_divisor(h, lp, divisor.empty() ? "0" : divisor);
        Rat x = parse_rat(x_s);
        j["divisor"] = format_divisor(h, lp, D);
        j["x"] = rat_to_string(x);
        if (sweep) {
          ojson rows = ojson::array();
          for (double e : {1e-2, 1e-3, 1e-4}) {
            TruncationParams q = c.p;
            q.eps = e;
            ComplexEstimate v = sD_estimate(h, D, x, q);
            rows.push_back({{"eps", e}, {"value", cx_json(v.value)}, {"error_estimate", v.error}});
          }
          j["rows"] = rows;
          j["value"] = rows.back()["value"];
          j["error_estimate"] = rows.back()["error_estimate"];
        } else {
          ComplexEstimate v = sD_estimate(h, D, x, c.p);
          j["value"] = cx_json(v.value);
          j["error_estimate"] = v.error;
        }
      } else if (kind == "scholl") {
        RatDivisor D = parse_divisor(h, lp, divisor.empty() ? "0" : divisor);
        ComplexEstimate v = scholl_coefficient(h, D, r > 0 ? r : 1, c.p);
        j["divisor"] = format_divisor(h, lp, D);
        j["r"] = r > 0 ? r : 1;
        j["value"] = cx_json(v.value);
        j["error_estimate"] = v.error;
      } else if (kind == "scattering") {
        if (k2_s.empty()) throw std::invalid_argument("scattering needs --k2");
        int jj = cusp_arg(h, lp, j_s), k1 = cusp_arg(h, lp, k_s), k2 = cusp_arg(h, lp, k2_s);
        auto nm = norm == "pi" ? ScatteringNormalization::Pi : ScatteringNormalization::PiToS;
        RealEstimate v = scattering_difference(h, jj, k1, k2, c.p, nm);
        j["j"] = h.ct.cusps[jj].label();
        j["k1"] = h.ct.cusps[k1].label();
        j["k2"] = h.ct.cusps[k2].label();
        j["normalization"] = norm;
        j["value"] = v.value;
        j["error_estimate"] = v.error;
        j["stable"] = v.stable;
      } else if (kind == "contour") {
        if (!lab) throw std::invalid_argument("contour tables need --N");
        if (!divisor.empty()) {
          RatDivisor D = parse_divisor(h, lp, divisor);
          Side side = side_of(h, D);
          auto vals = oracle_values(*lab, D, side, c.p);
          ojson rows = ojson::array();
          double worst = 0;
          for (int x = 0; x < h.n(); ++x) {
            double e = vals[x].error.convert_to<double>();
            worst = std::max(worst, e);
            rows.push_back({{"coset", "(" + std::to_string(x % c.N) + "," + std::to_string(x / c.N) + ")"},
                            {"value", cx_json(vals[x].value)},
                            {"error_estimate", e},
                            {"converged", vals[x].converged}});
          }
          j["divisor"] = format_divisor(h, lp, D);
          j["side"] = side_name(side);
          j["rows"] = rows;
          j["value"] = "per coset, see rows";
          j["error_estimate"] = worst;
        } else {
          UnitSpec u;
          u.family = parse_family(unit);
          u.j = unit_j;
          u.N = lab->N();
          auto reps = coset_reps(h.d);
          ojson rows = ojson::array();
          double worst = 0;
          for (Side side : {Side::Plus, Side::Minus})
            for (int x = 0; x < h.n(); ++x) {
              ContourValue v = contour_F(u, h.d, reps[x], side, c.p);
              double e = v.error.convert_to<double>();
              worst = std::max(worst, e);
              rows.push_back({{"coset", x}, {"side", side_name(side)}, {"value", cx_json(v.value)}, {"error_estimate", e}});
            }
          j["unit"] = family_name(u.family);
          j["rows"] = rows;
          j["value"] = "per coset, see rows";
          j["error_estimate"] = worst;
        }
      }
      j["params"] = params_json(c.p);
      j["conventions"] = conventions_json();
      emit(j, c.out);
      return kOk;
    }
  } catch (const DessinFormatError& e) {
    ojson j;
    j["error"] = "invalid dessin";
    j["violations"] = e.violations;
    std::cerr << j.dump(2) << "\n";
    return kInvalidDessin;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
