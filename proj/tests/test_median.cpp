#include <gtest/gtest.h>

#include <random>

#include "cubical/median.hpp"
#include "oracle.hpp"

using namespace cubical;

namespace {

HalfSpace H(int i, int n, int sign = 1) { return EuclideanComplex::coordinate_halfspace(i, n, sign); }

std::vector<DefiningGraph> oracle_graphs() {
  return {DefiningGraph::named("pentagon"), DefiningGraph::named("F2"), DefiningGraph::path(4),
          DefiningGraph::named("Z3"), DefiningGraph::from_edge_mask(4, 0b011010)};
}

struct RaagBall {
  std::vector<Vertex> verts;  // centred at the identity
};

RaagBall raag_ball(const DefiningGraph& g, int r) {
  RaagBall b;
  for (const auto& w : oracle::cayley_ball(g, r).words) b.verts.push_back(normalize(g, w));
  return b;
}

// Relation of h and k by brute force over the given vertices, using the
// distance-based membership oracle.
template <class Dist>
Relation brute_relation(const Complex& cx, const HalfSpace& h, const HalfSpace& k, const std::vector<Vertex>& verts,
                        Dist dist) {
  if (h == k) return Relation::Equal;
  bool h_not_k = false, k_not_h = false;
  for (const auto& z : verts) {
    bool in_h = oracle::membership_by_distance(cx, z, h, dist);
    bool in_k = oracle::membership_by_distance(cx, z, k, dist);
    h_not_k |= in_h && !in_k;
    k_not_h |= in_k && !in_h;
  }
  if (h_not_k && k_not_h) return Relation::Transverse;
  if (k_not_h) return Relation::SecondContainsFirst;
  return Relation::FirstContainsSecond;
}

}  // namespace

TEST(Interval, Examples) {
  auto z2 = EuclideanComplex::named("plane");
  EXPECT_EQ(interval(z2, {1, 1}, {1, 1}).size(), 0U);
  EXPECT_EQ(interval(z2, {0, 0}, {2, 3}).size(), 5U);
  RaagComplex p(DefiningGraph::named("pentagon"));
  auto g = parse_word(p.graph(), "abcde");
  auto iv = interval(p, {}, g);
  ASSERT_EQ(iv.size(), 5U);
  std::set<int> labels;
  for (const auto& h : iv.halfspaces) labels.insert(p.label(h));
  EXPECT_EQ(labels, (std::set<int>{0, 2, 4, 6, 8}));
  auto rv = reversed(iv);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(rv.halfspaces[i], iv.halfspaces[4 - i].complement());
  // [y, x] computed directly is the same set.
  auto direct = interval(p, g, {});
  EXPECT_EQ(std::set<HalfSpace>(direct.halfspaces.begin(), direct.halfspaces.end()),
            std::set<HalfSpace>(rv.halfspaces.begin(), rv.halfspaces.end()));
}

TEST(Interval, SizeMatchesPilingLength) {
  RaagComplex p(DefiningGraph::named("pentagon"));
  auto ball = raag_ball(p.graph(), 4).verts;
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& x = ball[pick(rng)];
    const auto& y = ball[pick(rng)];
    auto iv = interval(p, x, y);
    ASSERT_EQ(static_cast<int>(iv.size()), oracle::word_distance(p.graph(), x, y));
    std::set<HalfSpace> distinct(iv.halfspaces.begin(), iv.halfspaces.end());
    ASSERT_EQ(distinct.size(), iv.size());
    for (const auto& h : iv.halfspaces) {
      ASSERT_TRUE(p.membership(y, h));
      ASSERT_FALSE(p.membership(x, h));
    }
  }
}

TEST(Median, Examples) {
  auto z2 = EuclideanComplex::named("plane");
  EXPECT_EQ(median(z2, {0, 0}, {0, 0}, {4, 1}), (Vertex{0, 0}));
  EXPECT_EQ(median(z2, {0, 0}, {2, 0}, {1, 3}), (Vertex{1, 0}));
  RaagComplex f(DefiningGraph::named("F2"));
  const auto& g = f.graph();
  EXPECT_EQ(median(f, {}, parse_word(g, "ab"), parse_word(g, "aB")), parse_word(g, "a"));
}

TEST(Median, MatchesBallOracle) {
  int instances = 0;
  for (const auto& gr : oracle_graphs()) {
    RaagComplex cx(gr);
    auto ball = raag_ball(gr, 4).verts;
    std::mt19937 rng(1234 + gr.size());
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    auto dist = [&](const Vertex& a, const Vertex& b) { return oracle::word_distance(gr, a, b); };
    for (int t = 0; t < 110; ++t) {
      // x anywhere in the ball, y and z in the radius-4 ball around x.
      Vertex x = ball[pick(rng)];
      Vertex y = multiply(gr, x, ball[pick(rng)]);
      Vertex z = multiply(gr, x, ball[pick(rng)]);
      Vertex best;
      int best_sum = 1 << 30, ties = 0;
      for (const auto& b : ball) {
        Vertex m = multiply(gr, x, b);
        int s = dist(m, x) + dist(m, y) + dist(m, z);
        if (s < best_sum) {
          best_sum = s;
          best = m;
          ties = 1;
        } else if (s == best_sum) {
          ++ties;
        }
      }
      ASSERT_EQ(ties, 1);
      auto m = median(cx, x, y, z);
      ASSERT_EQ(m, best);
      ASSERT_EQ(median(cx, z, x, y), m);
      for (auto [a, b] : {std::pair{x, y}, std::pair{y, z}, std::pair{x, z}})
        ASSERT_EQ(dist(a, m) + dist(m, b), dist(a, b));
      ++instances;
    }
  }
  EXPECT_GE(instances, 500);
}

TEST(InHull, Examples) {
  auto z2 = EuclideanComplex::named("plane");
  EXPECT_TRUE(in_hull(z2, {0, 0}, {0, 0}, {2, 3}));
  EXPECT_TRUE(in_hull(z2, {1, 1}, {0, 0}, {2, 3}));
  EXPECT_FALSE(in_hull(z2, {3, 1}, {0, 0}, {2, 3}));
  auto st = EuclideanComplex::named("staircase");
  EXPECT_FALSE(in_hull(st, {3, 1}, {0, 0}, {4, 4}));
  EXPECT_TRUE(in_hull(st, {3, 2}, {0, 0}, {4, 4}));
}

TEST(Hull, VerticesMatchIntervalOracle) {
  RaagComplex p(DefiningGraph::named("pentagon"));
  const auto& gr = p.graph();
  auto ball = raag_ball(gr, 4).verts;
  std::mt19937 rng(77);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto& y = ball[pick(rng)];
    auto hull = Hull::of_interval(p, interval(p, {}, y));
    std::set<Vertex> expect;
    for (const auto& z : ball)
      if (oracle::word_distance(gr, {}, z) + oracle::word_distance(gr, z, y) == oracle::word_distance(gr, {}, y))
        expect.insert(z);
    ASSERT_EQ(std::set<Vertex>(hull.vertices().begin(), hull.vertices().end()), expect);
    for (std::size_t v = 0; v < hull.num_vertices(); ++v)
      for (std::size_t i = 0; i < hull.num_halfspaces(); ++i)
        ASSERT_EQ(hull.contains_bit(v, i), p.membership(hull.vertices()[v], hull.halfspaces()[i]));
  }
  // Hull of three points.
  Vertex a = parse_word(gr, "ab"), b = parse_word(gr, "C"), c = parse_word(gr, "dd");
  auto h3 = Hull::of_points(p, {a, b, c});
  for (const auto& v : h3.vertices()) {
    // Only hyperplanes separating two of the points are crossed.
    for (const auto& h : p.geodesic(a, v)) EXPECT_TRUE(h3.has_hyperplane(h));
  }
  EXPECT_TRUE(h3.vertex_index(median(p, a, b, c)) >= 0);
}

TEST(Hull, ResourceCap) {
  RaagComplex z3(DefiningGraph::named("Z3"));
  Vertex far = parse_word(z3.graph(), "aaaabbbbcccc");
  EXPECT_THROW(Hull::of_interval(z3, interval(z3, {}, far), 100), ResourceError);
  EXPECT_EQ(Hull::of_interval(z3, interval(z3, {}, far)).num_vertices(), 125U);
}

TEST(Relation, Examples) {
  auto z2 = EuclideanComplex::named("plane");
  Scope s1(z2, {0, 0}, {3, 0});
  EXPECT_EQ(relation(H(0, 0), H(0, 2), s1), Relation::FirstContainsSecond);
  EXPECT_EQ(relation(H(0, 2), H(0, 0), s1), Relation::SecondContainsFirst);
  EXPECT_EQ(relation(H(0, 1), H(0, 1), s1), Relation::Equal);
  EXPECT_TRUE(tightly_nested(H(0, 0), H(0, 1), s1));
  EXPECT_FALSE(tightly_nested(H(0, 0), H(0, 2), s1));
  Scope s2(z2, {0, 0}, {1, 1});
  EXPECT_EQ(relation(H(0, 0), H(1, 0), s2), Relation::Transverse);
  EXPECT_THROW(relation(H(0, 0), H(0, 5), s2), PreconditionError);
  EXPECT_THROW(relation(H(0, 0, -1), H(1, 0), s2), PreconditionError);
  EXPECT_THROW(tightly_nested(H(0, 0), H(1, 0), s2), PreconditionError);

  auto st = EuclideanComplex::named("staircase");
  Scope s3(st, {0, 0}, st.act(st.generator(), {0, 0}));
  EXPECT_EQ(relation(H(1, 0), H(0, 1), s3), Relation::FirstContainsSecond);
  EXPECT_TRUE(tightly_nested(H(1, 0), H(0, 1), s3));
}

TEST(Relation, MatchesBruteForceRaag) {
  int instances = 0;
  for (const auto& gr : oracle_graphs()) {
    RaagComplex cx(gr);
    auto ball = raag_ball(gr, 4).verts;
    std::mt19937 rng(99 + gr.size());
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    auto dist = [&](const Vertex& a, const Vertex& b) { return oracle::word_distance(gr, a, b); };
    int done = 0;
    while (done < 110) {
      Vertex x = ball[pick(rng)];
      Vertex y = multiply(gr, x, ball[pick(rng)]);
      Scope scope(cx, x, y);
      const auto& hs = scope.interval().halfspaces;
      if (hs.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> hp(0, hs.size() - 1);
      const auto& h = hs[hp(rng)];
      const auto& k = hs[hp(rng)];
      // The ball around x of radius 4 contains the interval hull.
      std::vector<Vertex> verts;
      for (const auto& b : ball) verts.push_back(multiply(gr, x, b));
      Relation expect = brute_relation(cx, h, k, verts, dist);
      Relation got = relation(h, k, scope);
      ASSERT_EQ(got, expect) << cx.describe(h) << " " << cx.describe(k);
      Relation back = relation(k, h, scope);
      if (got == Relation::FirstContainsSecond) ASSERT_EQ(back, Relation::SecondContainsFirst);
      if (got == Relation::SecondContainsFirst) ASSERT_EQ(back, Relation::FirstContainsSecond);
      if (got == Relation::Transverse || got == Relation::Equal) ASSERT_EQ(back, got);
      if (got == Relation::FirstContainsSecond) {
        // Tight nesting against the brute-force relation of every third member.
        bool tight = true;
        for (const auto& l : hs)
          if (l != h && l != k && brute_relation(cx, h, l, verts, dist) == Relation::FirstContainsSecond &&
              brute_relation(cx, l, k, verts, dist) == Relation::FirstContainsSecond)
            tight = false;
        ASSERT_EQ(tightly_nested(h, k, scope), tight);
      }
      ++done;
      ++instances;
    }
  }
  EXPECT_GE(instances, 500);
}

TEST(Relation, NeverDisjointWithinInterval) {
  RaagComplex p(DefiningGraph::named("pentagon"));
  auto ball = raag_ball(p.graph(), 3).verts;
  for (std::size_t t = 0; t < ball.size(); t += 7) {
    Hull hull = Hull::of_interval(p, interval(p, {}, ball[t]));
    for (const auto& h : hull.halfspaces())
      for (const auto& k : hull.halfspaces()) {
        auto r = hull.general_relation(h, k);
        ASSERT_TRUE(r == GeneralRelation::Equal || r == GeneralRelation::Contains ||
                    r == GeneralRelation::ContainedIn || r == GeneralRelation::Transverse);
      }
  }
}

TEST(Relation, MatchesBruteForceEuclidean) {
  for (const char* name : {"staircase", "glide-plane", "subdivided", "plane"}) {
    auto cx = EuclideanComplex::named(name);
    auto dist = [&](const Vertex& a, const Vertex& b) { return cx.distance(a, b); };
    std::vector<Vertex> verts;
    for (int x = -8; x <= 8; ++x)
      for (int y = -8; y <= 8; ++y)
        if (cx.is_vertex({x, y})) verts.push_back({x, y});
    auto g = cx.generator();
    Vertex o = cx.origin();
    for (int a = -2; a <= 0; ++a) {
      Vertex x = cx.act(cx.power(g, a), o);
      Vertex y = cx.act(cx.power(g, 2), o);
      if (x == y) continue;
      Scope scope(cx, x, y);
      for (const auto& h : scope.interval().halfspaces)
        for (const auto& k : scope.interval().halfspaces)
          ASSERT_EQ(relation(h, k, scope), brute_relation(cx, h, k, verts, dist)) << name;
    }
  }
}

TEST(HullCache, Memoises) {
  RaagComplex p(DefiningGraph::named("pentagon"));
  HullCache cache;
  auto y = parse_word(p.graph(), "abcde");
  auto s1 = cache.scope(p, {}, y);
  auto s2 = cache.scope(p, {}, y);
  EXPECT_EQ(s1.get(), s2.get());
  EXPECT_EQ(cache.size(), 1U);
}
