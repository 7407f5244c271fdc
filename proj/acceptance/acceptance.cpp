// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "corpus.hpp"
#include "thueq/thueq.hpp"

using namespace thueq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

bool close_digits(const Ball& b, const char* oracle, int digits) {
  Ball o = Ball::from_string(oracle, b.prec());
  return (abs(b - o) / abs(o)).mid().to_double() < std::pow(10.0, -digits);
}

PhiVector phi_norm_only(double n, mpfr_prec_t p) {
  PhiVector v;
  for (auto& c : v.c) c = Ball::from_int(0, p);
  v.c[0] = Ball::from_double(n, p);
  v.norm = Ball::from_double(n, p);
  return v;
}

void ac1() {
  const QuarticForm F(1, -4, -1, 4, 1);
  auto t0 = Clock::now();
  RootSystem rs = find_roots(F);
  auto plus = enumerate_solutions(F, rs, mpz_class(10000), Rhs::Plus);
  double dt = seconds_since(t0);
  auto minus = enumerate_solutions(F, rs, mpz_class(10000), Rhs::Minus);
  std::set<std::pair<long, long>> want{{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {4, 1}, {-1, 4}, {8, 7}, {-7, 8}}, got;
  for (const auto& s : plus) got.emplace(s.x.get_si(), s.y.get_si());
  bool ok = got == want && plus.size() == 8 && minus.empty() && dt < 5.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu solutions with F=+1, %zu with F=-1, %.2f s", plus.size(), minus.size(), dt);
  report("AC1", ok, buf);
}

struct CorpusRun {
  std::vector<CertificationReport> reports;
  std::string jsonl;
  double seconds = 0;
  int errors = 0;
};

CorpusRun run_corpus(const std::vector<QuarticForm>& forms) {
  CorpusRun out;
  auto t0 = Clock::now();
  for (const auto& F : forms) {
    try {
      out.reports.push_back(certify(F));
      out.jsonl += to_jsonl(out.reports.back());
    } catch (const std::exception& e) {
      ++out.errors;
      out.jsonl += F.str() + " error " + e.what() + "\n";
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

void ac2(const std::vector<QuarticForm>& forms, const CorpusRun& run) {
  int sig[3] = {0, 0, 0}, over = 0, bad = 0;
  for (const auto& r : run.reports) {
    ++sig[r.sig.s];
    over += r.count > r.table.U;
    bad += r.exit_code() == 4;
  }
  bool ok = forms.size() >= 200 && sig[0] && sig[1] && sig[2] && over == 0 && bad == 0 && run.errors == 0 &&
            run.seconds < 600;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu forms (%d/%d/%d by signature), %d above U, %d inconsistent, %d errors, %.1f s",
                forms.size(), sig[0], sig[1], sig[2], over, bad, run.errors, run.seconds);
  report("AC2", ok, buf);
}

void ac3(const std::vector<QuarticForm>& forms) {
  int disc_bad = 0, mah_bad = 0;
  for (const auto& F : forms) {
    RootSystem rs = find_roots(F);
    const mpfr_prec_t p = rs.prec;
    Ball a0 = Ball::from_z(F[0], p);
    CBall prod(Ball::from_int(1, p));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        CBall d = rs.roots[i] - rs.roots[j];
        prod = prod * d * d;
      }
    Ball a6 = a0 * a0 * a0;
    a6 = a6 * a6;
    CBall D = prod * a6;
    Real exact = Ball::from_z(F.disc(), p).mid();
    if (!D.re.contains(exact) || !D.im.contains_zero()) ++disc_bad;
    if (!possibly_le(mahler_lower_bound(F, p), rs.mahler)) ++mah_bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu forms, %d discriminant enclosures miss, %d Mahler lower-bound violations",
                forms.size(), disc_bad, mah_bad);
  report("AC3", disc_bad == 0 && mah_bad == 0, buf);
}

void ac4(const CorpusRun& run) {
  const std::vector<std::string> ids{"sep", "fprime", "rootdist", "AG", "phi.norm", "phi0.norm", "ratio.height"};
  std::map<std::string, std::pair<int, int>> tally;  // evaluated, failed
  for (const auto& r : run.reports)
    for (const auto& q : r.predicates)
      if (std::find(ids.begin(), ids.end(), q.id) != ids.end()) {
        ++tally[q.id].first;
        tally[q.id].second += !q.holds;
      }
  bool ok = true;
  std::string detail;
  for (const auto& id : ids) {
    auto [n, f] = tally[id];
    ok = ok && n > 0 && f == 0;
    detail += id + " " + std::to_string(n - f) + "/" + std::to_string(n) + "  ";
  }
  report("AC4", ok, detail);
}

void ac5(const CorpusRun& run) {
  const Ball tiny = Ball::from_string("1e-20", kDefaultBits);
  const Ball resid_max = Ball::from_string("1e-10", kDefaultBits);
  const Ball voutier = Ball::from_string("0.00325", kDefaultBits);
  int full = 0, units = 0, sum_bad = 0, h_bad = 0, decomps = 0, dec_bad = 0;
  for (const auto& rep : run.reports) {
    if (!rep.lattice || rep.lattice->rank != rep.sig.r + rep.sig.s - 1) continue;
    ++full;
    const UnitLattice& L = *rep.lattice;
    for (const auto& u : L.generators) {
      ++units;
      Ball s = u.logv[0] + u.logv[1] + u.logv[2] + u.logv[3];
      if (!certainly_lt(abs(s), tiny)) ++sum_bad;
      if (!certainly_lt(voutier, unit_height(u.logv))) ++h_bad;
    }
    const QuarticForm& G = rep.reduced;
    RootSystem rs = find_roots(G);
    PhiVector origin = phi_of_solution(rs, G, 1, 0);
    for (const auto& r : rep.solutions) {
      if (r.ys == 0) continue;
      ++decomps;
      try {
        Decomposition d = decompose_phi(L, phi_of_solution(rs, G, r.xs, r.ys), origin);
        if (!certainly_lt(d.residual, resid_max)) ++dec_bad;
      } catch (const std::exception&) {
        ++dec_bad;
      }
    }
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "%d full-rank forms, %d units (%d sum, %d height failures), %d decompositions (%d over 1e-10)", full,
                units, sum_bad, h_bad, decomps, dec_bad);
  report("AC5", full >= 20 && units > 0 && sum_bad == 0 && h_bad == 0 && dec_bad == 0, buf);
}

void ac6() {
  const mpfr_prec_t p = 256;
  MatveevConstants k = matveev_constants(3, 2, 24, Ball::from_int(10, p));
  bool digits = close_digits(k.C, "1604856791.166165946498028057833709642572", 30) &&
                close_digits(k.C0, "33.33975155974550976127380326275812491791", 30) &&
                close_digits(k.W0, "8.315949578739907201954922357013856819089", 30);
  MatveevInput in{3, 24, 2, {Ball::from_int(1, p), Ball::from_int(2, p), Ball::from_int(3, p)}, Ball::from_int(10, p)};
  MatveevBound base = matveev_lower_bound(in);
  digits = digits && close_digits(base.value, "-1537744650421579.834681355881972065229083", 30);
  bool linear = true;
  for (int j = 0; j < 3; ++j) {
    MatveevInput d = in;
    d.A[j] = d.A[j] * Ball::from_int(2, p);
    linear = linear && matveev_lower_bound(d).value.mid() == (base.value * Ball::from_int(2, p)).mid();
  }
  report("AC6", digits && linear,
         std::string("constants to 30 digits ") + (digits ? "match" : "differ") + ", doubling each A_j " +
             (linear ? "doubles" : "does not double") + " the bound");
}

void ac7() {
  const mpfr_prec_t p = kDefaultBits;
  auto tri = [&](double a, double b, double c) {
    return std::array<PhiVector, 3>{phi_norm_only(a, p), phi_norm_only(b, p), phi_norm_only(c, p)};
  };
  Ball M = Ball::from_double(4.5, p), M2 = M * M, vol = Ball::from_int(4, p);
  struct Case {
    const char* name;
    bool got, want;
  };
  std::vector<Case> cases{
      {"exg5 r1=120 r3=10", exp_gap_check(tri(120, 60, 10), {4, 0}).holds, false},
      {"exg5 r1=60 r3=10", exp_gap_check(tri(60, 30, 10), {4, 0}).holds, true},
      {"exg5 r1=0 r3=0.00015", exp_gap_check(tri(0, 0, 0.00015), {4, 0}).holds, true},
      {"exg5alt vol=4 r1=6 r3=2.8", exp_gap_check(tri(6, 4, 2.8), {2, 1}, vol).holds, true},
      {"exg5alt vol=4 r1=6 r3=2.7", exp_gap_check(tri(6, 4, 2.7), {2, 1}, vol).holds, false},
      {"exg (0,2) not applicable", exp_gap_check(tri(6, 4, 2.7), {0, 2}).applicable, false},
      {"S65 y2=M^4", cube_gap_check(M2, M2 * M2, M).holds, true},
      {"S65 y2=M^3", cube_gap_check(M2, M2 * M, M).holds, false},
  };
  bool ok = true;
  std::string bad;
  for (const auto& c : cases)
    if (c.got != c.want) {
      ok = false;
      bad += std::string(" ") + c.name;
    }
  report("AC7", ok, std::to_string(cases.size()) + " branch cases" + (ok ? " reproduced" : ", wrong:" + bad));
}

void ac8(const std::vector<QuarticForm>& forms, const CorpusRun& first) {
  CorpusRun second = run_corpus(forms);
  bool same = first.jsonl == second.jsonl;
  auto tmp = std::filesystem::temp_directory_path() / ("thueq_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(tmp);
  auto scan = [&](int width) {
    std::istringstream in("template = 1 0 0 a 1\na = -10..10\ncap = 1000\nwidth = " + std::to_string(width) +
                          "\nout = " + (tmp / ("w" + std::to_string(width) + ".jsonl")).string() + "\n");
    ScanSpec spec = parse_scan_spec(in);
    std::filesystem::remove(spec.out + ".journal");
    run_scan(spec);
    std::ifstream f(spec.out, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  std::string w1 = scan(1), w8 = scan(8);
  std::filesystem::remove_all(tmp);
  bool scan_same = !w1.empty() && w1 == w8;
  report("AC8", same && scan_same,
         std::string("corpus reports ") + (same ? "byte-identical" : "differ") + " (" +
             std::to_string(first.jsonl.size()) + " bytes), width-8 scan " + (scan_same ? "equals" : "differs from") +
             " width-1");
}

}  // namespace

int main() {
  const auto forms = corpus::forms();
  ac1();
  CorpusRun run = run_corpus(forms);
  ac2(forms, run);
  ac3(forms);
  ac4(run);
  ac5(run);
  ac6();
  ac7();
  ac8(forms, run);
  return failures == 0 ? 0 : 1;
}
