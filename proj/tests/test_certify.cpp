#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
const QuarticForm kPaper(1, -4, -1, 4, 1);
}

TEST(Certify, PaperForm) {
  CertificationReport r = certify(kPaper, mpz_class(10000));
  EXPECT_EQ(r.count, 8);
  EXPECT_EQ(r.verdict, "consistent");
  EXPECT_EQ(r.summary(), "8 <= 26 consistent");
  EXPECT_EQ(r.sig, (Signature{4, 0}));
  ASSERT_TRUE(r.lattice.has_value());
  EXPECT_EQ(r.lattice->rank, 3);
  for (const auto& q : r.predicates)
    if (q.applicable) {
      EXPECT_TRUE(q.holds) << q.id << " " << q.note;
    }
}

TEST(Certify, SmallExamples) {
  CertificationReport a = certify(QuarticForm(1, 0, 0, 0, 1), mpz_class(1000));
  EXPECT_EQ(a.count, 2);
  EXPECT_EQ(a.verdict, "consistent");
  CertificationReport b = certify(QuarticForm(1, 0, 0, 0, -2), mpz_class(1000));
  EXPECT_EQ(b.count, 3);
  EXPECT_EQ(b.table.U, 14);
  EXPECT_EQ(b.verdict, "consistent");
  CertificationReport c = certify(QuarticForm(1, 0, 0, 0, -2));
  EXPECT_EQ(c.y_max, 12);  // ceil(2^3.5)
  EXPECT_EQ(c.exit_code(), 0);
}

TEST(Certify, PartialWhenCapBelowThreshold) {
  CertificationReport r = certify(kPaper, mpz_class(10));
  EXPECT_EQ(r.verdict, "partial");
  EXPECT_EQ(r.exit_code(), 5);
  CertifyOptions o;
  o.cap_clamp = 20;
  CertificationReport s = certify(kPaper, o);
  EXPECT_EQ(s.verdict, "partial");
  EXPECT_FALSE(s.caveats.empty());
}

TEST(Certify, RejectsReducible) {
  EXPECT_THROW(certify(QuarticForm(1, 0, 0, 0, 0)), ContractError);
  EXPECT_THROW(certify(QuarticForm(1, 0, 0, 0, -4)), ContractError);
}

TEST(Certify, ExceptionalSetSizes) {
  CertificationReport r = certify(kPaper, mpz_class(1000));
  int inA = 0;
  for (const auto& s : r.solutions) inA += s.in_A;
  EXPECT_EQ(inA, 6);
  EXPECT_EQ(r.A_definition, 6);
  EXPECT_EQ(r.A_table, 6);
  CertificationReport g = certify(QuarticForm(1, 0, 0, 0, 1), mpz_class(100));
  EXPECT_EQ(g.A_definition, 2);
  EXPECT_EQ(g.A_table, 1);
  EXPECT_EQ(g.verdict, "consistent");  // the discrepancy never reaches the verdict
}

TEST(Certify, BuildASetWithoutNontrivialSolutions) {
  std::vector<SolutionRecord> one(1);
  one[0].ys = 0;
  EXPECT_EQ(build_A_set(one, {4, 0}).size(), 1u);
}

TEST(Certify, RegimeThresholds) {
  const mpfr_prec_t p = 128;
  Ball M = Ball::from_int(4, p);  // 4^(11/6+0.01) ~ 12.9, 4^3.5 = 128
  EXPECT_EQ(classify_regime(12, M, 0.01), Regime::Small);
  EXPECT_EQ(classify_regime(13, M, 0.01), Regime::Banded);
  EXPECT_EQ(classify_regime(127, M, 0.01), Regime::Banded);
  EXPECT_EQ(classify_regime(128, M, 0.01), Regime::Large);
}

TEST(Certify, EquivalenceTransport) {
  std::mt19937_64 rng(3);
  for (const auto& F : corpus::forms(3)) {
    long a = static_cast<long>(rng() % 5) - 2, b = static_cast<long>(rng() % 5) - 2;
    GL2Action T = GL2Action{1, a, 0, 1} * GL2Action{1, 0, b, 1};
    QuarticForm G = gl2_transform(F, T);
    CertificationReport rf = certify(F, mpz_class(2000));
    // solutions of G are T^-1 of those of F; compare the transported set
    std::set<std::pair<std::string, std::string>> want;
    for (const auto& s : rf.solutions) {
      auto [x, y] = T.inverse().apply(s.input.x, s.input.y);
      canonicalize(x, y);
      want.emplace(x.get_str(), y.get_str());
    }
    mpz_class cap = 0;
    for (const auto& [x, y] : want) cap = std::max(cap, mpz_class(y));
    CertificationReport rg = certify(G, cap);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& s : rg.solutions) got.emplace(s.input.x.get_str(), s.input.y.get_str());
    for (const auto& w : want) EXPECT_TRUE(got.count(w)) << F.str() << " " << w.first << "," << w.second;
    EXPECT_EQ(rg.sig, rf.sig);
    EXPECT_EQ(G.disc(), F.disc());
  }
}

TEST(Certify, ReportIsDeterministicLineRecords) {
  std::string a = to_jsonl(certify(kPaper, mpz_class(300)));
  std::string b = to_jsonl(certify(kPaper, mpz_class(300)));
  EXPECT_EQ(a, b);
  std::istringstream in(a);
  std::string line;
  int sols = 0, preds = 0, verdicts = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    std::string rec = j["record"];
    if (rec == "header") {
      EXPECT_EQ(j["form"], "1 -4 -1 4 1");
      EXPECT_EQ(j["disc"], "10512");
      EXPECT_EQ(j["sig"], "(4,0)");
      EXPECT_TRUE(j.contains("mahler"));
    }
    if (rec == "solution") {
      ++sols;
      for (const char* k : {"sol.x", "sol.y", "sol.value", "sol.root", "sol.regime"}) EXPECT_TRUE(j.contains(k));
    }
    if (rec == "predicate") {
      ++preds;
      for (const char* k : {"pred.id", "pred.holds", "pred.slack"}) EXPECT_TRUE(j.contains(k));
    }
    if (rec == "verdict") {
      ++verdicts;
      EXPECT_EQ(j["verdict"], "consistent");
    }
  }
  EXPECT_EQ(sols, 8);
  EXPECT_GT(preds, 20);
  EXPECT_EQ(verdicts, 1);
}

TEST(Certify, ComplexRootSolutionsRespectBound) {
  for (const auto& F : corpus::forms(8)) {
    CertificationReport r = certify(F, mpz_class(500));
    for (const auto& q : r.predicates)
      if (q.id == "AG") {
        EXPECT_TRUE(q.holds) << F.str();
      }
  }
}
