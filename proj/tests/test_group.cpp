#include <gtest/gtest.h>

#include <random>

#include "cubical/group.hpp"
#include "oracle.hpp"

using namespace cubical;

namespace {

Word W(const DefiningGraph& g, const char* s) { return parse_word(g, s); }

std::vector<DefiningGraph> small_graphs() {
  return {DefiningGraph::named("pentagon"), DefiningGraph::named("F2"), DefiningGraph::named("Z2"),
          DefiningGraph::path(4), DefiningGraph::complete(3), DefiningGraph::from_edge_mask(4, 0b100101)};
}

// Every word of the given length over the graph's 2n letters.
template <class F>
void for_each_word(int letters, int len, F f) {
  Word w(len, 0);
  while (true) {
    f(w);
    int i = len - 1;
    while (i >= 0 && ++w[i] == letters) w[i--] = 0;
    if (i < 0) return;
  }
}

Word random_word(std::mt19937& rng, int letters, int len) {
  std::uniform_int_distribution<int> d(0, letters - 1);
  Word w(len);
  for (auto& c : w) c = d(rng);
  return w;
}

}  // namespace

TEST(Graph, NamedAndJson) {
  auto p = DefiningGraph::named("pentagon");
  EXPECT_EQ(p.size(), 5);
  EXPECT_TRUE(p.adjacent(0, 1));
  EXPECT_TRUE(p.adjacent(4, 0));
  EXPECT_FALSE(p.adjacent(0, 2));
  auto j = DefiningGraph::from_json_text(R"({"generators":["a","b","c"],"edges":[["a","b"]]})");
  EXPECT_TRUE(j.adjacent(0, 1));
  EXPECT_FALSE(j.adjacent(1, 2));
  EXPECT_EQ(DefiningGraph::from_json(j.to_json()), j);
  EXPECT_THROW(DefiningGraph::from_json_text(R"({"generators":["a","a"],"edges":[]})"), ParseError);
  EXPECT_THROW(DefiningGraph::from_json_text(R"({"generators":["a"],"edges":[["a","a"]]})"), ParseError);
}

TEST(Parse, UnknownGeneratorNamesToken) {
  auto g = DefiningGraph::named("F2");
  try {
    parse_word(g, "abz");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos);
  }
  EXPECT_EQ(parse_word(g, "a B"), (Word{0, 3}));
  EXPECT_EQ(parse_word(g, "b^-1"), (Word{3}));
}

TEST(Normalize, Examples) {
  auto p = DefiningGraph::named("pentagon");
  EXPECT_TRUE(normalize(p, W(p, "aA")).empty());
  EXPECT_EQ(format_word(p, normalize(p, W(p, "ba"))), "ab");
  EXPECT_EQ(format_word(p, normalize(p, W(p, "acbC"))), "ab");
  // The rewriting oracle agrees on the same inputs.
  EXPECT_EQ(oracle::rewrite_normal_form(p, W(p, "acbC")), W(p, "ab"));
}

TEST(Normalize, MatchesRewritingOracleExhaustive) {
  for (const auto& g : small_graphs()) {
    for (int len = 0; len <= 4; ++len)
      for_each_word(2 * g.size(), len, [&](const Word& w) {
        ASSERT_EQ(normalize(g, w), oracle::rewrite_normal_form(g, w)) << format_word(g, w);
      });
  }
}

TEST(Normalize, MatchesRewritingOracleSampled) {
  std::mt19937 rng(11);
  for (const auto& g : small_graphs())
    for (int t = 0; t < 300; ++t) {
      Word w = random_word(rng, 2 * g.size(), 5 + t % 3);
      ASSERT_EQ(normalize(g, w), oracle::rewrite_normal_form(g, w)) << format_word(g, w);
    }
}

TEST(Normalize, IdempotentExhaustive) {
  // Length <= 6 on a six-generator graph, length <= 8 on a three-generator one.
  auto g6 = DefiningGraph::from_edge_mask(6, 0x5A5A);
  for (int len = 0; len <= 6; ++len)
    for_each_word(12, len, [&](const Word& w) {
      auto n = normalize(g6, w);
      ASSERT_EQ(normalize(g6, n), n);
    });
  auto g3 = DefiningGraph::path(3);
  for (int len = 7; len <= 8; ++len)
    for_each_word(6, len, [&](const Word& w) {
      auto n = normalize(g3, w);
      ASSERT_EQ(normalize(g3, n), n);
    });
}

TEST(Normalize, IdempotentSampledLength8SixGenerators) {
  std::mt19937 rng(5);
  for (std::uint64_t mask : {0ULL, 0x7FFFULL, 0x1234ULL, 0x5A5AULL}) {
    auto g = DefiningGraph::from_edge_mask(6, mask);
    for (int t = 0; t < 20000; ++t) {
      Word w = random_word(rng, 12, 8);
      auto n = normalize(g, w);
      ASSERT_EQ(normalize(g, n), n);
    }
  }
}

TEST(Equals, AgreesWithPilingOracle) {
  std::mt19937 rng(3);
  for (const auto& g : small_graphs()) {
    for (int t = 0; t < 2000; ++t) {
      Word u = random_word(rng, 2 * g.size(), 1 + t % 6);
      Word v;
      if (t % 2) {
        // An equal word: rewrite u by a random insertion of x x^-1 and swaps.
        v = u;
        std::uniform_int_distribution<int> pos(0, static_cast<int>(v.size()));
        Letter c = random_word(rng, 2 * g.size(), 1)[0];
        int at = pos(rng);
        v.insert(v.begin() + at, {c, letter_inv(c)});
        auto cl = oracle::rewrite_closure(g, v);
        auto it = cl.begin();
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, cl.size() - 1)(rng));
        v = *it;
      } else {
        v = random_word(rng, 2 * g.size(), 1 + (t / 2) % 6);
      }
      ASSERT_EQ(equals(g, u, v), oracle::piling(g, u) == oracle::piling(g, v))
          << format_word(g, u) << " vs " << format_word(g, v);
      ASSERT_EQ(normalize(g, u).size(), static_cast<std::size_t>(oracle::piling_length(oracle::piling(g, u))));
    }
  }
}

TEST(Multiply, GroupLaws) {
  auto f = DefiningGraph::named("F2");
  EXPECT_EQ(format_word(f, multiply(f, W(f, "ab"), W(f, "Ba"))), "aa");
  auto p = DefiningGraph::named("pentagon");
  EXPECT_EQ(multiply(p, W(p, "a"), W(p, "b")), multiply(p, W(p, "b"), W(p, "a")));
  std::mt19937 rng(9);
  for (int t = 0; t < 500; ++t) {
    auto x = normalize(p, random_word(rng, 10, t % 7));
    auto y = normalize(p, random_word(rng, 10, t % 5));
    auto z = normalize(p, random_word(rng, 10, t % 4));
    EXPECT_TRUE(multiply(p, x, invert(p, x)).empty());
    EXPECT_LE(multiply(p, x, y).size(), x.size() + y.size());
    EXPECT_EQ(multiply(p, multiply(p, x, y), z), multiply(p, x, multiply(p, y, z)));
    EXPECT_EQ(power(p, x, 3), multiply(p, x, multiply(p, x, x)));
  }
}

TEST(FirstLetters, Examples) {
  auto p = DefiningGraph::named("pentagon");
  EXPECT_TRUE(first_letters(p, {}).empty());
  auto f = DefiningGraph::named("F2");
  EXPECT_EQ(first_letters(f, W(f, "ab")), (std::vector<Letter>{0}));
  auto fl = first_letters(p, normalize(p, W(p, "bad")));
  EXPECT_EQ(std::set<Letter>(fl.begin(), fl.end()), oracle::rewrite_first_letters(p, normalize(p, W(p, "bad"))));
  EXPECT_EQ(std::set<Letter>(fl.begin(), fl.end()), (std::set<Letter>{0, 2}));
}

TEST(FirstLetters, MatchesEnumerationUpToLength6) {
  for (const auto& g : {DefiningGraph::named("pentagon"), DefiningGraph::path(4), DefiningGraph::named("Z3")}) {
    auto ball = oracle::cayley_ball(g, 6);
    for (const auto& w : ball.words) {
      auto x = normalize(g, w);
      auto fl = first_letters(g, x);
      ASSERT_EQ(std::set<Letter>(fl.begin(), fl.end()), oracle::rewrite_first_letters(g, x)) << format_word(g, x);
      auto ll = last_letters(g, x);
      auto rev = oracle::rewrite_first_letters(g, normalize(g, oracle::inverse_word(x)));
      std::set<Letter> expect;
      for (Letter c : rev) expect.insert(letter_inv(c));
      ASSERT_EQ(std::set<Letter>(ll.begin(), ll.end()), expect);
    }
  }
}

namespace {

// Minimal length over conjugates h g h^-1 with |h| <= radius, via pilings.
int oracle_min_conjugate_length(const DefiningGraph& g, const Word& x, const oracle::Ball& ball) {
  int best = oracle::piling_length(oracle::piling(g, x));
  for (const auto& h : ball.words)
    best = std::min(best, oracle::piling_length(oracle::piling(g, oracle::concat(oracle::concat(h, x), oracle::inverse_word(h)))));
  return best;
}

// min over x in the ball of d(x, g x) = |x^-1 g x|.
int oracle_translation(const DefiningGraph& g, const Word& x, const oracle::Ball& ball) {
  int best = 1 << 30;
  for (const auto& v : ball.words)
    best = std::min(best, oracle::piling_length(oracle::piling(g, oracle::concat(oracle::concat(oracle::inverse_word(v), x), v))));
  return best;
}

}  // namespace

TEST(CyclicReduce, Examples) {
  auto f = DefiningGraph::named("F2");
  auto d = cyclically_reduce(f, normalize(f, W(f, "baB")));
  EXPECT_EQ(format_word(f, d.conjugator), "b");
  EXPECT_EQ(format_word(f, d.core), "a");
  auto p = DefiningGraph::named("pentagon");
  auto e = cyclically_reduce(p, normalize(p, W(p, "a")));
  EXPECT_TRUE(e.conjugator.empty());
  EXPECT_EQ(format_word(p, e.core), "a");
  auto x = normalize(p, W(p, "cabcdeC"));
  auto c = cyclically_reduce(p, x);
  EXPECT_EQ(c.core.size(), 5U);
  // Conjugate to abcde: some h in a small ball carries one to the other.
  auto ball = oracle::cayley_ball(p, 3);
  bool found = false;
  for (const auto& h : ball.words)
    if (oracle::piling(p, oracle::concat(oracle::concat(h, c.core), oracle::inverse_word(h))) == oracle::piling(p, W(p, "abcde")))
      found = true;
  EXPECT_TRUE(found);
}

TEST(CyclicReduce, CoreIsMinimalAndConjugate) {
  std::mt19937 rng(17);
  for (const auto& g : small_graphs()) {
    auto ball = oracle::cayley_ball(g, 4);
    for (int t = 0; t < 150; ++t) {
      auto x = normalize(g, random_word(rng, 2 * g.size(), 1 + t % 7));
      auto d = cyclically_reduce(g, x);
      Word back = oracle::concat(oracle::concat(d.conjugator, d.core), oracle::inverse_word(d.conjugator));
      ASSERT_EQ(oracle::piling(g, back), oracle::piling(g, x));
      ASSERT_EQ(static_cast<int>(d.core.size()), oracle_min_conjugate_length(g, x, ball)) << format_word(g, x);
      ASSERT_EQ(cyclically_reduce(g, x).core, d.core);
    }
  }
}

TEST(TranslationLength, Examples) {
  auto f = DefiningGraph::named("F2");
  auto p = DefiningGraph::named("pentagon");
  EXPECT_EQ(translation_length(p, {}), 0);
  auto bf = oracle::cayley_ball(f, 3);
  auto bp = oracle::cayley_ball(p, 3);
  EXPECT_EQ(oracle_translation(f, W(f, "ab"), bf), 2);
  EXPECT_EQ(translation_length(f, W(f, "ab")), 2);
  EXPECT_EQ(oracle_translation(p, W(p, "abcde"), bp), 5);
  EXPECT_EQ(translation_length(p, W(p, "abcde")), 5);
}

TEST(TranslationLength, PowersAgainstBfs) {
  std::mt19937 rng(23);
  for (const auto& g : small_graphs()) {
    auto ball = oracle::cayley_ball(g, 3);
    for (int t = 0; t < 12; ++t) {
      auto x = cyclically_reduce(g, normalize(g, random_word(rng, 2 * g.size(), 1 + t % 4))).core;
      if (x.empty()) continue;
      for (int n = 1; n <= 5; ++n) {
        auto xn = power(g, x, n);
        ASSERT_EQ(translation_length(g, xn), n * translation_length(g, x));
        ASSERT_EQ(translation_length(g, xn), oracle_translation(g, xn, ball)) << format_word(g, xn);
      }
    }
  }
}

TEST(Strip, SpecialSubgroupSplits) {
  auto p = DefiningGraph::named("pentagon");
  std::mt19937 rng(31);
  for (int t = 0; t < 500; ++t) {
    auto x = normalize(p, random_word(rng, 10, t % 8));
    std::uint64_t gens = p.adjacency_mask(t % 5);
    auto [pre, rest] = strip_prefix(p, x, gens);
    EXPECT_TRUE(in_special_subgroup(pre, gens));
    EXPECT_EQ(multiply(p, pre, rest), x);
    for (Letter c : first_letters(p, rest)) EXPECT_FALSE((gens >> letter_gen(c)) & 1U);
    auto [rest2, suf] = strip_suffix(p, x, gens);
    EXPECT_TRUE(in_special_subgroup(suf, gens));
    EXPECT_EQ(multiply(p, rest2, suf), x);
    for (Letter c : last_letters(p, rest2)) EXPECT_FALSE((gens >> letter_gen(c)) & 1U);
  }
}
