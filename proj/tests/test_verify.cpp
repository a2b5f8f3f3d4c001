#include <gtest/gtest.h>

#include "cubical/verify.hpp"
#include "oracle.hpp"

using namespace cubical;

namespace {

Automorphism elem(const RaagComplex& cx, const std::string& w) { return cx.element(parse_word(cx.graph(), w)); }

const SuiteResult& suite(const VerifyReport& r, const std::string& name) {
  for (const auto& s : r.suites)
    if (s.name == name) return s;
  throw std::out_of_range(name);
}

VerifyConfig small_config(unsigned seed) {
  VerifyConfig cfg;
  cfg.seed = seed;
  cfg.instances = 60;
  cfg.raaglike_samples = 100;
  cfg.defect_triples = 60;
  return cfg;
}

}  // namespace

TEST(Corpus, GraphClassCounts) {
  const std::vector<std::size_t> expected{1, 2, 4, 11, 34};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(graph_classes(n).size(), expected[n - 1]) << n;
  for (const auto& g : graph_classes(4)) EXPECT_EQ(g.size(), 4);
  EXPECT_THROW(graph_classes(0), PreconditionError);
}

TEST(Corpus, ElementsAreDistinctNormalForms) {
  // The free group on 3 generators has 6 * 5^(len-1) reduced words of each length.
  EXPECT_EQ(corpus_elements(DefiningGraph::free_group(3), 4).size(), 6U + 30 + 150 + 750);
  auto z2 = DefiningGraph::named("Z2");
  // Z^2: lattice points with 1 <= |x| + |y| <= 3.
  EXPECT_EQ(corpus_elements(z2, 3).size(), 4U + 8 + 12);
  auto els = corpus_elements(DefiningGraph::named("pentagon"), 3);
  std::set<oracle::Piling> pilings;
  for (const auto& w : els) pilings.insert(oracle::piling(DefiningGraph::named("pentagon"), w));
  EXPECT_EQ(pilings.size(), els.size());
}

TEST(Verify, PentagonPasses) {
  RaagComplex p(DefiningGraph::named("pentagon"));
  auto rep = verify_all(p, elem(p, "abcde"), small_config(1));
  EXPECT_TRUE(rep.ok()) << to_json(rep).dump(1);
  EXPECT_EQ(suite(rep, "median").checks, 60U);
  EXPECT_EQ(suite(rep, "counting").detail["sclLowerBound"], "1/24");
}

TEST(Verify, FreeGroupUsesTreeBounds) {
  RaagComplex f(DefiningGraph::named("F2"));
  auto rep = verify_all(f, elem(f, "ab"), small_config(7));
  EXPECT_TRUE(rep.ok()) << to_json(rep).dump(1);
  const auto& d = suite(rep, "defect").detail;
  EXPECT_EQ(d["treeMode"], true);
  EXPECT_EQ(d["coboundaryBound"], 3);
  EXPECT_EQ(d["junctureBound"], 1);
}

TEST(Verify, StaircaseCounting) {
  auto st = EuclideanComplex::named("staircase");
  auto rep = verify_all(st, st.generator(), small_config(1));
  EXPECT_TRUE(suite(rep, "embedding").passed);
  const auto& c = suite(rep, "counting");
  EXPECT_TRUE(c.passed);
  ASSERT_EQ(c.detail["staircase"].size(), 6U);
  EXPECT_EQ(c.detail["staircase"][5]["bad"], 1);
  EXPECT_EQ(c.detail["staircase"][5]["good"], 6);
  EXPECT_TRUE(suite(rep, "defect").skipped);
  EXPECT_TRUE(rep.ok()) << to_json(rep).dump(1);
}

TEST(Verify, SubdividedFixtureIsReportedNotRaagLike) {
  auto sub = EuclideanComplex::named("subdivided");
  auto rep = verify_all(sub, sub.generator(), small_config(1));
  const auto& r = suite(rep, "raaglike");
  EXPECT_EQ(r.detail["ok"], false);
  EXPECT_GT(r.detail["selfOsculations"].get<int>(), 0);
  EXPECT_TRUE(suite(rep, "embedding").skipped);
}

TEST(Verify, IdenticalSeedsGiveIdenticalReports) {
  RaagComplex p(DefiningGraph::named("path3"));
  auto a = to_json(verify_all(p, elem(p, "abc"), small_config(3))).dump();
  auto b = to_json(verify_all(p, elem(p, "abc"), small_config(3))).dump();
  EXPECT_EQ(a, b);
}
