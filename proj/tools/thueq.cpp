// Command-line front end: analyze, solve, certify, scan, matveev.
//
// Exit codes: 0 ok, 2 parse or arity error, 3 contract or numerical failure,
// 4 inconsistent certification, 5 partial certification, 6 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thueq/thueq.hpp"

namespace {

using namespace thueq;

struct Globals {
  long precision = 0;  // 0: environment or built-in default
  int k = kDefaultK;
  double theta = 0.01;
  std::string ymax;
  std::string rhs = "both";
  std::string out;
};

Rhs parse_rhs(const std::string& s) {
  if (s == "1" || s == "+1") return Rhs::Plus;
  if (s == "-1") return Rhs::Minus;
  if (s == "both") return Rhs::Both;
  throw ParseError("--rhs must be 1, -1 or both");
}

mpfr_prec_t precision_of(const Globals& g) {
  if (g.precision == 0) return env_precision();
  if (g.precision < 32 || g.precision > kMaxBits)
    throw ParseError("--precision-bits must lie in [32, " + std::to_string(kMaxBits) + "]");
  return static_cast<mpfr_prec_t>(g.precision);
}

mpz_class parse_ymax(const std::string& s) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0 || v < 0) throw ParseError("--ymax must be a nonnegative integer");
  return v;
}

QuarticForm require_irreducible(const std::string& text) {
  QuarticForm F = parse_form(text);
  if (F[0] == 0 || F.disc() == 0 || !is_irreducible(F))
    throw ContractError(F.str() + " is reducible");
  return F;
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("cannot write " + path);
}

int cmd_analyze(const Globals& g, const std::string& text) {
  QuarticForm F = parse_form(text);
  const bool irreducible = F[0] != 0 && F.disc() != 0 && is_irreducible(F);
  if (!irreducible) throw ContractError(F.str() + " is reducible");
  const mpfr_prec_t p = precision_of(g);
  RootSystem rs = find_roots(F, p);
  MahlerReport mr = mahler_measure(rs, F);
  std::ostringstream o;
  o << "form        " << F.str() << "\n";
  o << "disc        " << F.disc().get_str() << "\n";
  o << "signature   (" << rs.r << "," << rs.s << ")\n";
  o << "mahler      " << mr.value.mid().str(30) << "\n";
  o << "mahD5       " << mr.lower.mid().str(30) << (mr.holds ? " holds" : " FAILS") << "\n";
  o << "irreducible yes\n";
  o << "precision   " << p << " bits\n";
  const bool monic = F.is_monic();
  std::vector<FprimeCheck> fc;
  if (monic)
    for (const auto& c : fprime_bounds_check(rs, F)) fc.push_back(c);
  for (int i = 0; i < 4; ++i) {
    o << "root " << i << "      " << rs.roots[i].re.mid().str(25);
    if (!rs.is_real(i)) o << (rs.roots[i].im.mid().sign() < 0 ? " - " : " + ") << abs(rs.roots[i].im).mid().str(25) << " i";
    o << "\n  |f'|      " << abs(rs.fprime[i]).mid().str(25);
    if (monic) o << "  in [" << fc[i].lower.mid().str(8) << ", " << fc[i].upper.mid().str(8) << "]";
    o << "\n";
  }
  if (g.out.empty()) std::cout << o.str();
  else write_output(g.out, o.str());
  return 0;
}

int cmd_solve(const Globals& g, const std::string& text) {
  QuarticForm F = require_irreducible(text);
  const mpfr_prec_t p = precision_of(g);
  RootSystem rs = find_roots(F, p);
  mpz_class ymax;
  if (!g.ymax.empty()) {
    ymax = parse_ymax(g.ymax);
  } else {
    Ball M35 = exp(log(rs.mahler) * Ball::from_q(mpq_class(7, 2), p));
    mpz_class c;
    mpfr_get_z(c.get_mpz_t(), M35.hi().raw(), MPFR_RNDU);
    ymax = std::min(c, mpz_class(kDefaultCapClamp));
  }
  auto sols = enumerate_solutions(F, rs, ymax, parse_rhs(g.rhs));
  std::ostringstream o;
  for (const auto& s : sols) {
    int root = classify_related(rs, F, s.x, s.y);
    Regime reg = classify_regime(s.y, rs.mahler, g.theta);
    o << s.x.get_str() << ' ' << s.y.get_str() << ' ' << s.value << ' ' << root << ' ' << regime_name(reg) << "\n";
  }
  if (g.out.empty()) std::cout << o.str();
  else write_output(g.out, o.str());
  return 0;
}

int cmd_certify(const Globals& g, const std::string& text) {
  QuarticForm F = require_irreducible(text);
  CertifyOptions opt;
  opt.precision = precision_of(g);
  opt.k = g.k;
  opt.theta = g.theta;
  opt.rhs = parse_rhs(g.rhs);
  if (!g.ymax.empty()) opt.y_max = parse_ymax(g.ymax);
  CertificationReport rep = certify(F, opt);
  std::string body = to_jsonl(rep);
  if (g.out.empty()) std::cout << body;
  else write_output(g.out, body);
  std::cout << rep.summary() << "\n";
  return rep.exit_code();
}

int cmd_scan(const Globals& g, const std::string& path) {
  ScanSpec spec = parse_scan_spec_file(path);
  if (g.precision) spec.certify.precision = precision_of(g);
  else spec.certify.precision = env_precision(spec.certify.precision);
  if (!g.out.empty()) spec.out = g.out;
  ScanResult r = run_scan(spec);
  std::cout << "records " << r.records << " skipped " << r.skipped << " resumed " << r.resumed << "\n";
  return 0;
}

int cmd_matveev(const Globals& g, int n, int chi, int d, const std::string& B, const std::vector<std::string>& A) {
  if (static_cast<int>(A.size()) != n)
    throw ParseError("--A has " + std::to_string(A.size()) + " entries but --n is " + std::to_string(n));
  const mpfr_prec_t p = precision_of(g);
  MatveevInput in;
  in.n = n;
  in.chi = chi;
  in.d = d;
  in.B = Ball::from_string(B, p);
  for (const auto& a : A) in.A.push_back(Ball::from_string(a, p));
  MatveevBound mb = matveev_lower_bound(in);
  std::ostringstream o;
  o << "C(n)   " << mb.k.C.mid().str(35) << "\n";
  o << "C0     " << mb.k.C0.mid().str(35) << "\n";
  o << "W0     " << mb.k.W0.mid().str(35) << "\n";
  o << "Omega  " << mb.omega.mid().str(35) << "\n";
  o << "bound  " << mb.value.mid().str(35) << "\n";
  o << "note   " << mb.label << "\n";
  if (g.out.empty()) std::cout << o.str();
  else write_output(g.out, o.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified counts of solutions to quartic Thue equations |F(x,y)| = 1"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file mirroring the flags");
  Globals g;
  app.add_option("--precision-bits", g.precision, "working precision in bits")->envname("THUEQ_PRECISION_BITS");
  app.add_option("--k", g.k, "scaling exponent of the logarithmic curve")->check(CLI::PositiveNumber);
  app.add_option("--theta", g.theta, "banded-regime exponent offset");
  app.add_option("--ymax", g.ymax, "enumeration cap on y");
  app.add_option("--rhs", g.rhs, "right-hand side: 1, -1 or both");
  app.add_option("--out", g.out, "output file");

  std::string form;
  auto* analyze = app.add_subcommand("analyze", "discriminant, signature, Mahler measure and roots");
  analyze->add_option("form", form, "five coefficients a0..a4, quoted")->required();
  auto* solve = app.add_subcommand("solve", "list solutions up to --ymax");
  solve->add_option("form", form)->required();
  auto* cert = app.add_subcommand("certify", "full certification report");
  cert->add_option("form", form)->required();
  std::string spec;
  auto* scan = app.add_subcommand("scan", "certify a family of forms");
  scan->add_option("spec", spec, "scan spec file")->required();
  int n = 1, chi = 1, d = 1;
  std::string B = "1";
  std::vector<std::string> A;
  auto* mat = app.add_subcommand("matveev", "constants and bound of Matveev's theorem");
  mat->add_option("--n", n)->required();
  mat->add_option("--chi", chi)->required();
  mat->add_option("--d", d)->required();
  mat->add_option("--B", B)->required();
  mat->add_option("--A", A)->required()->delimiter(',');
  for (auto* sc : {analyze, solve, cert, scan, mat}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(g, form);
    if (*solve) return cmd_solve(g, form);
    if (*cert) return cmd_certify(g, form);
    if (*scan) return cmd_scan(g, spec);
    if (*mat) return cmd_matveev(g, n, chi, d, B, A);
  } catch (const thueq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const thueq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
