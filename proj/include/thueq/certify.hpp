#pragma once

// End-to-end certification of |F(x,y)| = 1 against the solution-count tables.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "thueq/bounds.hpp"
#include "thueq/errors.hpp"
#include "thueq/form.hpp"
#include "thueq/heights.hpp"
#include "thueq/logcurve.hpp"
#include "thueq/predicate.hpp"
#include "thueq/roots.hpp"
#include "thueq/search.hpp"
#include "thueq/units.hpp"

namespace thueq {

inline constexpr long kDefaultCapClamp = 1000000;

struct CertifyOptions {
  mpfr_prec_t precision = kDefaultBits;
  int k = kDefaultK;
  double theta = 0.01;
  std::optional<mpz_class> y_max;  ///< default ceil(M^3.5) clamped to cap_clamp
  long cap_clamp = kDefaultCapClamp;
  Rhs rhs = Rhs::Both;
  int translations = 4;  ///< x -> x + t y for |t| <= this when minimising M
  bool units = true;
  int max_unit_effort = 3;
};

struct SolutionRecord {
  Solution input;  ///< in the coordinates of the form given
  mpz_class xs, ys;  ///< in the coordinates of the reduced monic form
  Ball phi_norm;
  bool in_A = false;
  std::vector<int> X;  ///< Stewart sets containing the solution
};

struct CertificationReport {
  QuarticForm form;
  QuarticForm reduced;  ///< +-F o T, monic when a solution exists
  GL2Action transform;
  int sign = 1;
  Signature sig;
  Ball mahler;          ///< of the input form
  Ball mahler_reduced;
  mpz_class y_max;
  bool partial = false;
  CountTable table;
  std::vector<SolutionRecord> solutions;
  std::vector<Predicate> predicates;
  int A_definition = 1;
  int A_table = 1;
  std::optional<UnitLattice> lattice;
  std::vector<std::string> caveats;
  int count = 0;
  std::string verdict;

  int exit_code() const {
    if (verdict == "inconsistent") return 4;
    if (verdict == "partial") return 5;
    return 0;
  }
  std::string summary() const {
    return std::to_string(count) + (count <= table.U ? " <= " : " > ") + std::to_string(table.U) +
           " " + verdict;
  }
};

namespace detail {

inline mpz_class ceil_z(const Real& r) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.raw(), MPFR_RNDU);
  return z;
}

inline QuarticForm negated(const QuarticForm& F) {
  return QuarticForm(-F[0], -F[1], -F[2], -F[3], -F[4]);
}

struct Reduction {
  QuarticForm form;
  GL2Action T;
  int sign = 1;
  Ball M;
};

// Monic forms equivalent to F, one per (solution, translation); keeps the one
// of least Mahler measure, first found on ties.
inline Reduction minimise_mahler(const QuarticForm& F, const std::vector<Solution>& sols, int translations,
                                 mpfr_prec_t p) {
  std::optional<Reduction> best;
  size_t used = 0;
  for (const auto& s : sols) {
    if (used++ == 8) break;
    MonicizeResult mr = monicize(F, s.x, s.y);
    for (int t = -translations; t <= translations; ++t) {
      GL2Action U{1, t, 0, 1};
      GL2Action T = mr.transform * U;
      QuarticForm G = gl2_transform(F, T);
      int sign = 1;
      if (G[0] == -1) {
        G = negated(G);
        sign = -1;
      }
      Ball M = find_roots(G, p).mahler;
      if (!best || M.mid() < best->M.mid()) best = Reduction{G, T, sign, M};
    }
  }
  return *best;
}

}  // namespace detail

inline Regime classify_regime(const mpz_class& y, const Ball& M, double theta) {
  const mpfr_prec_t p = M.prec();
  Ball Y = Ball::from_z(y, p);
  Ball logM = log(M);
  Ball banded = exp(logM * (Ball::from_q(mpq_class(11, 6), p) + Ball::from_double(theta, p)));
  Ball large = exp(logM * Ball::from_q(mpq_class(7, 2), p));
  if (!(Y.mid() < large.mid())) return Regime::Large;
  if (!(Y.mid() < banded.mid())) return Regime::Banded;
  return Regime::Small;
}

/// The trivial solution plus the 2r+2s-3 non-trivial solutions of least ||phi||.
inline std::vector<size_t> build_A_set(const std::vector<SolutionRecord>& sols, Signature sig) {
  std::vector<size_t> trivial, rest;
  for (size_t i = 0; i < sols.size(); ++i) (sols[i].ys == 0 ? trivial : rest).push_back(i);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](size_t a, size_t b) { return sols[a].phi_norm.mid() < sols[b].phi_norm.mid(); });
  size_t want = static_cast<size_t>(std::max(0, 2 * sig.r + 2 * sig.s - 3));
  if (rest.size() > want) rest.resize(want);
  trivial.insert(trivial.end(), rest.begin(), rest.end());
  return trivial;
}

namespace detail {

inline void add(std::vector<Predicate>& out, Predicate p, const std::string& note = "") {
  if (!note.empty()) p.note = p.note.empty() ? note : note + "; " + p.note;
  out.push_back(std::move(p));
}

inline std::string sol_tag(const SolutionRecord& s) {
  return "(" + s.input.x.get_str() + "," + s.input.y.get_str() + ")";
}

}  // namespace detail

inline CertificationReport certify(const QuarticForm& F, const CertifyOptions& opt = {}) {
  if (F[0] == 0 || F.disc() == 0 || !is_irreducible(F)) throw ContractError("certify: " + F.str() + " is reducible");
  const mpfr_prec_t p = opt.precision;
  CertificationReport rep;
  rep.form = F;
  RootSystem rs_in = find_roots(F, p);
  rep.sig = signature_of(rs_in);
  rep.table = count_tables(rep.sig);
  rep.mahler = rs_in.mahler;
  const Ball M35 = exp(log(rs_in.mahler) * Ball::from_q(mpq_class(7, 2), p));
  const mpz_class natural_cap = detail::ceil_z(M35.hi());
  if (opt.y_max) {
    if (*opt.y_max < 0) throw ContractError("certify: y_max must be nonnegative");
    rep.y_max = *opt.y_max;
  } else {
    rep.y_max = std::min(natural_cap, mpz_class(opt.cap_clamp));
    if (rep.y_max < natural_cap) rep.caveats.push_back("enumeration cap clamped below M^3.5");
  }
  rep.partial = rep.y_max < natural_cap;

  std::vector<Solution> found = enumerate_solutions(F, rs_in, rep.y_max, opt.rhs);
  rep.count = static_cast<int>(found.size());

  // reduction to a monic form of small Mahler measure
  RootSystem rs = rs_in;
  if (!found.empty()) {
    auto red = detail::minimise_mahler(F, found, opt.translations, p);
    rep.reduced = red.form;
    rep.transform = red.T;
    rep.sign = red.sign;
    rs = find_roots(red.form, p);
    if (opt.translations > 0) rep.caveats.push_back("minimal Mahler measure approximated over a bounded set of transforms");
  } else {
    rep.reduced = F;
  }
  const QuarticForm& G = rep.reduced;
  const bool monic = G.is_monic();
  rep.mahler_reduced = rs.mahler;
  const Ball M = rs.mahler;
  const Ball Mlarge = exp(log(M) * Ball::from_q(mpq_class(7, 2), p));
  const GL2Action Tinv = rep.transform.inverse();

  for (const auto& s : found) {
    SolutionRecord r;
    r.input = s;
    auto [xs, ys] = Tinv.apply(s.x, s.y);
    canonicalize(xs, ys);
    if (G(xs, ys) != 1 && G(xs, ys) != -1) throw NumericalError("certify: transported pair is not a solution");
    r.xs = xs;
    r.ys = ys;
    r.input.related_root = classify_related(rs, G, xs, ys);
    r.input.regime = classify_regime(ys, M, opt.theta);
    rep.solutions.push_back(r);
  }

  auto& preds = rep.predicates;
  // per-form checks
  detail::add(preds, predicate_le("sep", separation_bound(M), min_root_separation(rs)), "reduced form");
  detail::add(preds, predicate_le("mahD5", mahler_lower_bound(F, p), rs_in.mahler), "input form");
  detail::add(preds, predicate_le("mahD5", mahler_lower_bound(G, p), rs.mahler), "reduced form");
  if (monic) {
    try {
      auto fc = fprime_bounds_check(rs, G);
      for (int i = 0; i < 4; ++i) {
        Predicate lo = predicate_le("fprime", fc[i].lower, fc[i].value);
        Predicate hi = predicate_le("fprime", fc[i].value, fc[i].upper);
        lo.note = "root " + std::to_string(i) + " lower";
        hi.note = "root " + std::to_string(i) + " upper";
        preds.push_back(lo);
        preds.push_back(hi);
      }
    } catch (const NumericalError& e) {
      preds.push_back(Predicate{"fprime", false, 0, true, e.what()});
    }
    preds.push_back(phi_trivial_norm_bound(G, rs, opt.k).outcome);
  }

  if (!monic) {
    rep.verdict = rep.count > rep.table.U ? "inconsistent" : (rep.partial ? "partial" : "consistent");
    rep.A_table = rep.table.A;
    return rep;
  }

  const PhiVector phi0 = phi_of_solution(rs, G, 1, 0, opt.k);
  std::vector<PhiVector> phis;
  std::map<std::tuple<int, int, int>, Ball> ratio_cache;
  const Ball two_log2 = Ball::from_int(2, p) * const_log2(p);
  const Ball D12 = log(abs(Ball::from_z(G.disc(), p))) / Ball::from_int(12, p);
  const Ball r1_floor = (D12 - const_log2(p)) / Ball::from_int(2, p);

  for (auto& r : rep.solutions) {
    PhiVector ph = phi_of_solution(rs, G, r.xs, r.ys, opt.k);
    r.phi_norm = ph.norm;
    phis.push_back(ph);
    if (r.ys == 0) continue;
    const std::string tag = detail::sol_tag(r);
    const int i = r.input.related_root;
    const bool large = !(Ball::from_z(r.ys, p).mid() < Mlarge.mid());

    DistanceCheck dc = min_root_distance_bound(rs, G, r.xs, r.ys);
    detail::add(preds, predicate_le("rootdist", dc.min_dist, dc.bound), tag);
    if (!rs.is_real(i))
      detail::add(preds, predicate_le("AG", Ball::from_z(r.ys, p), complex_root_ybound(rs, G, i)), tag);
    Ball dist = abs(CBall(Ball::from_z(r.xs, p)) - rs.roots[i] * Ball::from_z(r.ys, p));
    detail::add(preds, check_phi_norm_inequality(ph, phi0, dist), tag);

    SmallT st = select_small_tij(rs, r.xs, r.ys, i, ph);
    st.outcome.applicable = false;
    detail::add(preds, st.outcome, tag);
    auto key = std::make_tuple(st.best.i, st.best.j, i);
    auto it = ratio_cache.find(key);
    if (it == ratio_cache.end()) it = ratio_cache.emplace(key, ratio_height(G, rs, st.best.i, st.best.j, i).h).first;
    Predicate rh = predicate_le("ratio.height", it->second, two_log2 + Ball::from_int(2, p) * ph.norm);
    rh.note = "i=" + std::to_string(st.best.i) + " j=" + std::to_string(st.best.j) + " k=" + std::to_string(i);
    detail::add(preds, rh, tag);

    Predicate grows = predicate_lt("phi.grows", phi0.norm, ph.norm);
    Predicate floor_chk = predicate_le("phi.floor", r1_floor, ph.norm);
    grows.applicable = floor_chk.applicable = large;
    detail::add(preds, grows, tag);
    detail::add(preds, floor_chk, tag);
  }

  // gap principles between solutions related to the same root
  const bool big_disc = !(abs(Ball::from_z(G.disc(), p)).mid() < Ball::from_int(1L << 22, p).mid());
  for (int i = 0; i < 4; ++i) {
    std::vector<size_t> rel;
    for (size_t t = 0; t < rep.solutions.size(); ++t)
      if (rep.solutions[t].ys != 0 && rep.solutions[t].input.related_root == i) rel.push_back(t);
    std::sort(rel.begin(), rel.end(), [&](size_t a, size_t b) { return rep.solutions[a].ys < rep.solutions[b].ys; });
    for (size_t t = 0; t + 1 < rel.size(); ++t) {
      const auto& a = rep.solutions[rel[t]];
      const auto& b = rep.solutions[rel[t + 1]];
      Predicate cg = cube_gap_check(Ball::from_z(a.ys, p), Ball::from_z(b.ys, p), M);
      cg.applicable = cg.applicable && big_disc;
      detail::add(preds, cg, detail::sol_tag(a) + "->" + detail::sol_tag(b));
    }
  }

  // Stewart's small-solution count
  StewartReport sw = stewart_small_count(G, rs, Mlarge, [&] {
    std::vector<Solution> v;
    for (const auto& r : rep.solutions) {
      Solution s = r.input;
      s.x = r.xs;
      s.y = r.ys;
      v.push_back(s);
    }
    return v;
  }());
  for (const auto& [i, set] : sw.sets)
    for (const auto& s : set)
      for (auto& r : rep.solutions)
        if (r.xs == s.x && r.ys == s.y) r.X.push_back(i);
  preds.push_back(sw.S60);
  preds.push_back(sw.sm5);
  for (const auto& q : sw.ratio) preds.push_back(q);

  // the exceptional set
  auto A = build_A_set(rep.solutions, rep.sig);
  for (size_t idx : A) rep.solutions[idx].in_A = true;
  bool has_trivial = std::any_of(rep.solutions.begin(), rep.solutions.end(), [](const SolutionRecord& r) { return r.ys == 0; });
  rep.A_definition = static_cast<int>(A.size()) + (has_trivial ? 0 : 1);
  rep.A_table = rep.table.A;
  if (rep.A_definition > rep.A_table)
    rep.caveats.push_back("exceptional set: definition gives " + std::to_string(rep.A_definition) +
                          ", table gives " + std::to_string(rep.A_table));

  // unit lattice
  if (opt.units) {
    for (int effort = 2; effort <= std::max(2, opt.max_unit_effort); ++effort) {
      try {
        UnitSearchOptions uo;
        uo.effort = effort;
        for (const auto& r : rep.solutions) uo.extra_solutions.emplace_back(r.xs, r.ys);
        rep.lattice = unit_search(rs, G, uo);
        break;
      } catch (const InsufficientUnitsError& e) {
        if (effort >= opt.max_unit_effort) rep.caveats.push_back(std::string("unit lattice: ") + e.what());
      }
    }
  }
  if (rep.lattice) {
    const UnitLattice& L = *rep.lattice;
    if (L.finite_index_caveat) rep.caveats.push_back("unit lattice may be a finite-index sublattice");
    if (L.rank == 2) {
      auto pc = parallelogram_check(L);
      preds.push_back(pc[0]);
      preds.push_back(pc[1]);
    }
    for (size_t t = 0; t < rep.solutions.size(); ++t) {
      const auto& r = rep.solutions[t];
      if (r.ys == 0) continue;
      try {
        Decomposition dec = decompose_phi(L, phis[t], phi0);
        for (auto q : dec.mk) detail::add(preds, q, detail::sol_tag(r));
      } catch (const DecompositionError& e) {
        preds.push_back(Predicate{"decomp", false, 0, false, detail::sol_tag(r) + " " + e.what()});
      }
      // the longest basis vector is at most 2 ||phi|| for large solutions outside A
      if (!r.in_A && r.input.regime == Regime::Large && !L.basis.empty()) {
        Predicate c = predicate_le("basis.long", norm2(L.basis.back()), Ball::from_int(2, p) * r.phi_norm);
        c.applicable = false;
        detail::add(preds, c, detail::sol_tag(r));
      }
    }
  }

  // large-regime triples related to one real root: exponential gap, area, Matveev
  for (int i = 0; i < rs.r; ++i) {
    std::vector<size_t> rel;
    for (size_t t = 0; t < rep.solutions.size(); ++t) {
      const auto& r = rep.solutions[t];
      if (r.ys != 0 && r.input.related_root == i && r.input.regime == Regime::Large) rel.push_back(t);
    }
    std::sort(rel.begin(), rel.end(), [&](size_t a, size_t b) { return abs(rep.solutions[a].ys) < abs(rep.solutions[b].ys); });
    for (size_t a = 0; a + 2 < rel.size(); ++a) {
      std::array<PhiVector, 3> tri{phis[rel[a]], phis[rel[a + 1]], phis[rel[a + 2]]};
      std::optional<Ball> vol;
      if (rep.lattice) vol = rep.lattice->volume;
      const std::string tag = "root " + std::to_string(i) + " triple " + std::to_string(a);
      if (rep.sig == Signature{4, 0} || vol) {
        Predicate eg = exp_gap_check(tri, rep.sig, vol);
        eg.applicable = false;
        detail::add(preds, eg, tag);
      }
      AreaReport ar = area_sandwich_check(tri, vol);
      detail::add(preds, ar.up5, tag);
      detail::add(preds, ar.lower_bound, tag);
      if (ar.AV) detail::add(preds, *ar.AV, tag);
      if (rep.lattice) {
        // log|T| against Matveev with A_1 = 48 log 2 + 48 r1, A_k = 12 ||b_k||
        std::sort(tri.begin(), tri.end(), norm_less);
        const auto& top = rep.solutions[rel[a + 2]];
        size_t top_idx = rel[a + 2];
        for (size_t u = a; u < a + 3; ++u)
          if (phis[rel[u]].norm.mid() > phis[top_idx].norm.mid()) top_idx = rel[u];
        const auto& tr = rep.solutions[top_idx];
        SmallT st = select_small_tij(rs, tr.xs, tr.ys, i, phis[top_idx]);
        MatveevInput in;
        in.n = 1 + static_cast<int>(rep.lattice->basis.size());
        in.d = 24;
        in.chi = rs.s == 0 ? 1 : 2;
        in.A.push_back(Ball::from_int(48, p) * (const_log2(p) + tri[0].norm));
        for (const auto& b : rep.lattice->basis) in.A.push_back(Ball::from_int(12, p) * norm2(b));
        in.B = max(Ball::from_int(1, p), tri[2].norm / Ball::from_int(12, p));
        MatveevBound mb = matveev_lower_bound(in);
        Predicate mv = predicate_le("mat5", mb.value, log(abs(st.best.value)));
        mv.applicable = false;
        detail::add(preds, mv, tag + " " + detail::sol_tag(top));
      }
    }
  }

  bool failed = std::any_of(preds.begin(), preds.end(), [](const Predicate& q) { return q.applicable && !q.holds; });
  if (rep.count > rep.table.U || failed) rep.verdict = "inconsistent";
  else if (rep.partial) rep.verdict = "partial";
  else rep.verdict = "consistent";
  return rep;
}

inline CertificationReport certify(const QuarticForm& F, const mpz_class& y_max, int k = kDefaultK) {
  CertifyOptions opt;
  opt.y_max = y_max;
  opt.k = k;
  return certify(F, opt);
}

// ---------------------------------------------------------------- report

inline std::string sig_str(Signature s) { return "(" + s.str() + ")"; }

/// Line-delimited JSON records: header, solutions, predicates, verdict.
inline std::string to_jsonl(const CertificationReport& rep, int digits = 30) {
  using nlohmann::ordered_json;
  std::ostringstream out;
  ordered_json h;
  h["record"] = "header";
  h["form"] = rep.form.str();
  h["disc"] = rep.form.disc().get_str();
  h["sig"] = sig_str(rep.sig);
  h["mahler"] = rep.mahler.mid().str(digits);
  h["reduced"] = rep.reduced.str();
  h["transform"] = rep.transform.str();
  h["sign"] = rep.sign;
  h["mahler_reduced"] = rep.mahler_reduced.mid().str(digits);
  h["ymax"] = rep.y_max.get_str();
  h["caveats"] = rep.caveats;
  out << h.dump() << '\n';
  for (const auto& s : rep.solutions) {
    ordered_json j;
    j["record"] = "solution";
    j["sol.x"] = s.input.x.get_str();
    j["sol.y"] = s.input.y.get_str();
    j["sol.value"] = s.input.value;
    j["sol.root"] = s.input.related_root;
    j["sol.regime"] = regime_name(s.input.regime);
    j["reduced.x"] = s.xs.get_str();
    j["reduced.y"] = s.ys.get_str();
    if (rep.reduced.is_monic()) j["phi.norm"] = s.phi_norm.mid().str(12);
    j["in_A"] = s.in_A;
    j["X"] = s.X;
    out << j.dump() << '\n';
  }
  for (const auto& q : rep.predicates) {
    ordered_json j;
    j["record"] = "predicate";
    j["pred.id"] = q.id;
    j["pred.holds"] = q.holds;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", q.slack);
    j["pred.slack"] = buf;
    j["applicable"] = q.applicable;
    if (!q.note.empty()) j["note"] = q.note;
    out << j.dump() << '\n';
  }
  ordered_json v;
  v["record"] = "verdict";
  v["verdict"] = rep.verdict;
  v["count"] = rep.count;
  v["U"] = rep.table.U;
  v["A.definition"] = rep.A_definition;
  v["A.table"] = rep.A_table;
  if (rep.lattice) {
    v["units.rank"] = rep.lattice->rank;
    v["units.volume"] = rep.lattice->volume.mid().str(12);
  }
  out << v.dump() << '\n';
  return out.str();
}

}  // namespace thueq
