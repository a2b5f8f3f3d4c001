// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cubical/verify.hpp"
#include "oracle.hpp"

using namespace cubical;

namespace {

// Pinned limits.
constexpr double kPentagonSeconds = 60.0;
constexpr double kDefectSeconds = 300.0;
constexpr int kPentagonPowers = 8;
constexpr int kStaircasePowers = 6;
constexpr int kDefectTriples = 200;
constexpr int kOracleInstances = 500;
constexpr int kPosetInstances = 1000;
constexpr int kRaagLikeSamples = 500;
constexpr int kCorpusGenerators = 4;
constexpr int kCorpusWordLength = 4;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

HalfSpace H(int i, int n) { return EuclideanComplex::coordinate_halfspace(i, n); }

Automorphism elem(const RaagComplex& cx, const std::string& w) { return cx.element(parse_word(cx.graph(), w)); }

void report(int id, Outcome& o, int& failed) {
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
  failed += o.pass ? 0 : 1;
}

Outcome pentagon_end_to_end() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  RaagComplex cx(DefiningGraph::named("pentagon"));
  Automorphism g = elem(cx, "abcde");
  auto cls = classify(cx, g);
  SclOptions opt;
  opt.max_n = kPentagonPowers;
  SclCertificate c = scl_bound(cx, g, opt);
  const double dt = seconds_since(t0);
  o.require(cls.hyperbolic && cls.axis.ell == 5, "ell_g = 5");
  o.require(c.k == 1, "k = 1");
  o.require(c.d == 2, "d = 2");
  o.require(c.sigma == std::vector<int>{1, 0}, "sigma is the transposition");
  const auto& seg = c.gamma.segment;
  o.require(seg.size() == 2, "maximal g-nested segment has length 2");
  if (seg.size() == 2)
    o.require(seg.chain[0].gen != seg.chain[1].gen && !cx.graph().adjacent(seg.chain[0].gen, seg.chain[1].gen),
              "segment labels are a non-adjacent pair");
  o.require(static_cast<int>(c.counts.size()) == kPentagonPowers, "counts for n <= 8");
  for (const auto& r : c.counts) {
    o.require(r.exact && r.c == r.n, "c_gamma(o, g^n o) = n at n = " + std::to_string(r.n));
    o.require(r.cbar == 0, "c_gammabar(o, g^n o) = 0 at n = " + std::to_string(r.n));
  }
  o.require(c.rigor == Rigor::Certified, "certificate is Certified");
  o.require(c.scl_lower == Fraction::make(1, 24), "scl >= 1/24");
  o.require(dt < kPentagonSeconds, "runtime under 60 s");
  o.detail << "ell=" << cls.axis.ell << " k=" << c.k << " d=" << c.d << " gamma=" << cx.label_name(cx.label(seg.chain[0]))
           << (seg.size() > 1 ? "," + cx.label_name(cx.label(seg.chain[1])) : "") << " scl>=" << c.scl_lower.str()
           << " " << to_string(c.rigor) << " time=" << dt << "s";
  return o;
}

Outcome staircase_counts() {
  Outcome o;
  auto cx = EuclideanComplex::named("staircase");
  SegmentCounter bad(cx, Segment{{H(1, 0), H(0, 1)}}), good(cx, Segment{{H(0, 0), H(0, 1)}});
  std::ostringstream rows;
  for (int n = 1; n <= kStaircasePowers; ++n) {
    Vertex y = cx.act(cx.power(cx.generator(), n), cx.origin());
    CountReport b = bad.count(cx.origin(), y), gd = good.count(cx.origin(), y);
    o.require(b.exact && b.lower == 1, "bad segment count 1 at n = " + std::to_string(n));
    o.require(gd.exact && gd.lower == n, "good segment count n at n = " + std::to_string(n));
    rows << n << ":" << b.lower << "/" << gd.lower << " ";
  }
  o.detail << "n:bad/good " << rows.str();
  return o;
}

Outcome glide_plane() {
  Outcome o;
  auto cx = EuclideanComplex::named("glide-plane");
  auto cls = classify(cx, cx.generator());
  const int k = non_transverse_power(cx, cls.axis, 8);
  auto a = analyze(cx, cx.generator());
  o.require(k == 2, "non_transverse_power = 2");
  o.require(a.k == 2 && a.d == 2, "analysis of g^2 has d = 2");
  // Minimal set of g in a ball around the axis: a path, so no vertex has
  // more than two minimal neighbours.
  int minimal = 0, max_degree = 0;
  for (int x = -10; x <= 10; ++x)
    for (int y = -10; y <= 10; ++y) {
      Vertex v{x, y};
      if (!cx.is_vertex(v) || !is_minimal(cx, v, cls.axis)) continue;
      ++minimal;
      int deg = 0;
      for (const auto& nb : cx.neighbors(v)) deg += is_minimal(cx, nb.vertex, cls.axis) ? 1 : 0;
      max_degree = std::max(max_degree, deg);
    }
  o.require(minimal > 0, "minimal vertices found");
  o.require(max_degree <= 2, "minimal-set edges per vertex <= 2");
  o.detail << "k=" << k << " d(g^2)=" << a.d << " minimalVertices=" << minimal << " maxMinimalDegree=" << max_degree;
  return o;
}

Outcome defect_bounds() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* graph;
    const char* word;
    int cob, junc;
  };
  for (const Case& cs : {Case{"pentagon", "abcde", 6, 2}, Case{"F2", "ab", 3, 1}}) {
    RaagComplex cx(DefiningGraph::named(cs.graph));
    auto a = analyze(cx, elem(cx, cs.word));
    SegmentCounter counter(cx, maximal_g_nested(build_embedding(cx, a)).segment);
    try {
      DefectReport r = defect_sample(counter, {4, kDefectTriples, 1});
      o.require(r.triples >= kDefectTriples, "triple count");
      o.require(r.max_coboundary <= cs.cob, std::string(cs.graph) + " coboundary bound");
      o.require(r.max_juncture <= cs.junc, std::string(cs.graph) + " juncture bound");
      o.detail << cs.graph << ": max coboundary " << r.max_coboundary << " (bound " << cs.cob << "), max juncture "
               << r.max_juncture << " (bound " << cs.junc << ") over " << r.triples << " triples; ";
    } catch (const DefectViolation& v) {
      o.require(false, std::string(cs.graph) + ": " + v.what());
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < kDefectSeconds, "runtime under 5 min");
  o.detail << "time=" << dt << "s";
  return o;
}

std::vector<DefiningGraph> oracle_graphs() {
  return {DefiningGraph::named("pentagon"), DefiningGraph::named("F2"), DefiningGraph::path(4),
          DefiningGraph::complete(3), DefiningGraph::from_edge_mask(4, 0b011010), DefiningGraph::from_edge_mask(5, 0b1000110011)};
}

Outcome oracle_equivalence() {
  Outcome o;
  int medians = 0, relations = 0;
  const auto graphs = oracle_graphs();
  const int per_graph = (kOracleInstances + static_cast<int>(graphs.size()) - 1) / static_cast<int>(graphs.size());
  for (const auto& gr : graphs) {
    RaagComplex cx(gr);
    std::vector<Vertex> ball;
    for (const auto& w : oracle::cayley_ball(gr, 4).words) ball.push_back(normalize(gr, w));
    std::mt19937 rng(2024 + gr.size());
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    auto dist = [&](const Vertex& a, const Vertex& b) { return oracle::word_distance(gr, a, b); };
    for (int t = 0; t < per_graph; ++t) {
      Vertex x = ball[pick(rng)];
      Vertex y = multiply(gr, x, ball[pick(rng)]);
      Vertex z = multiply(gr, x, ball[pick(rng)]);
      Vertex best;
      int best_sum = 1 << 30, ties = 0;
      for (const auto& b : ball) {
        Vertex m = multiply(gr, x, b);
        int s = dist(m, x) + dist(m, y) + dist(m, z);
        if (s < best_sum) best_sum = s, best = m, ties = 1;
        else if (s == best_sum) ++ties;
      }
      o.require(ties == 1 && median(cx, x, y, z) == best, "median " + cx.vertex_name(x) + " " + cx.vertex_name(y) +
                                                              " " + cx.vertex_name(z));
      ++medians;
    }
    int done = 0;
    while (done < per_graph) {
      Vertex x = ball[pick(rng)];
      Vertex y = multiply(gr, x, ball[pick(rng)]);
      Scope scope(cx, x, y);
      const auto& hs = scope.interval().halfspaces;
      if (hs.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> hp(0, hs.size() - 1);
      const HalfSpace& h = hs[hp(rng)];
      const HalfSpace& k = hs[hp(rng)];
      bool h_not_k = false, k_not_h = false;
      for (const auto& b : ball) {
        Vertex v = multiply(gr, x, b);
        bool in_h = oracle::membership_by_distance(cx, v, h, dist), in_k = oracle::membership_by_distance(cx, v, k, dist);
        h_not_k |= in_h && !in_k;
        k_not_h |= in_k && !in_h;
      }
      Relation want = h == k                 ? Relation::Equal
                      : h_not_k && k_not_h   ? Relation::Transverse
                      : k_not_h              ? Relation::SecondContainsFirst
                                             : Relation::FirstContainsSecond;
      o.require(relation(h, k, scope) == want, "relation " + cx.describe(h) + " " + cx.describe(k));
      ++relations;
      ++done;
    }
  }
  o.require(medians >= kOracleInstances && relations >= kOracleInstances, "instance counts");
  o.detail << "median " << medians << " instances, relation " << relations << " instances";
  return o;
}

Outcome dilworth_correctness() {
  Outcome o;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  int instances = 0;
  for (int t = 0; t < kPosetInstances; ++t) {
    const int n = 1 + t % 12;
    FinitePoset p{oracle::random_poset(n, u(rng), rng)};
    const int width = oracle::brute_width(p.less);
    ChainPartition cp = dilworth_with_maximal_chain(p);
    o.require(static_cast<int>(cp.chains.size()) == width, "cover size equals width, instance " + std::to_string(t));
    const auto& flagged = cp.chains.at(cp.maximal_chain.value_or(0));
    std::vector<bool> in(n, false);
    for (int x : flagged) in[x] = true;
    bool maximal = true;
    for (int x = 0; x < n; ++x) {
      if (in[x]) continue;
      bool extends = true;
      for (int c : flagged) extends = extends && (p.less[x][c] || p.less[c][x]);
      if (extends) maximal = false;
    }
    o.require(cp.maximal_chain.has_value() && maximal, "flagged chain is maximal, instance " + std::to_string(t));
    ++instances;
  }
  o.detail << instances << " posets";
  return o;
}

struct CorpusTally {
  std::size_t elements = 0, embedding_failures = 0, segment_failures = 0;
  std::size_t isometry_pairs = 0, quadrant = 0, elbow = 0, sameway = 0, pair_failures = 0;
  std::size_t certificates = 0, certified = 0, gap_failures = 0, contradictions = 0;
  std::string first_embedding, first_pair, first_gap;
};

// Quadrant, elbow and same-way checks over every applicable pair.
void pair_suites(const Complex& cx, const TautEmbedding& e, CorpusTally& t, const std::string& name) {
  const HalfspaceWindow& w = *e.window;
  auto note = [&](const std::string& s) {
    if (t.pair_failures++ == 0) t.first_pair = name + ": " + s;
  };
  for (std::size_t h = 0; h < w.size(); ++h)
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (e.chain_of[h] == e.chain_of[k]) continue;
      ++t.quadrant;
      try {
        quadrant_check(e, h, k);
      } catch (const EmbeddingError& err) {
        note(err.what());
      }
      if (w.tightly_nested(k, h)) {
        ++t.elbow;
        try {
          elbow_check(e, h, k);
        } catch (const EmbeddingError& err) {
          note(err.what());
        }
      }
    }
  for (std::size_t k2 = 0; k2 < w.size(); ++k2)
    for (std::size_t k1 = 0; k1 < w.size(); ++k1) {
      if (!w.tightly_nested(k2, k1)) continue;
      for (std::size_t h = 0; h < w.size(); ++h) {
        if (e.chain_of[h] == e.chain_of[k1] || e.chain_of[h] == e.chain_of[k2]) continue;
        if (w.transverse(h, k1) || w.transverse(h, k2)) continue;
        ++t.sameway;
        if (w.contains(h, k1) != w.contains(h, k2)) note("same-way failure at " + cx.describe(w.element(h)));
      }
    }
}

// [A, gA) coincides with the grade-0 half-spaces, which are [o, g o].
bool segment_is_fundamental(const Complex& cx, const CharSetAnalysis& a, const TautEmbedding& e) {
  const HalfspaceWindow& w = *e.window;
  std::set<HalfSpace> grade0, iv;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.grade(i) == 0) grade0.insert(w.element(i));
  for (const auto& h : cx.geodesic(a.axis.base, cx.act(a.axis.g, a.axis.base))) iv.insert(h);
  if (grade0 != iv) return false;
  std::vector<std::size_t> A, gA;
  for (const auto& h : e.antichain) {
    auto i = w.index_of(h), j = w.index_of(cx.act_h(a.axis.g, h));
    if (!i || !j) return false;
    A.push_back(*i);
    gA.push_back(*j);
  }
  for (std::size_t x = 0; x < w.size(); ++x) {
    bool below_a = false, below_ga = false;
    for (auto i : A) below_a = below_a || i == x || w.contains(i, x);
    for (auto j : gA) below_ga = below_ga || j == x || w.contains(j, x);
    if ((below_a && !below_ga) != (w.grade(x) == 0)) return false;
  }
  for (std::size_t t = 0; t + 1 < e.taut_segment.size(); ++t) {
    auto i = w.index_of(e.taut_segment[t]), j = w.index_of(e.taut_segment[t + 1]);
    if (!i || !j || !w.tightly_nested(*i, *j)) return false;
  }
  return true;
}

void run_element(const Complex& cx, const Automorphism& g, const std::string& name, bool gap, CorpusTally& t) {
  ++t.elements;
  CharSetAnalysis a = analyze(cx, g);
  if (!a.hyperbolic) return;
  TautEmbedding e = build_embedding(cx, a);
  EmbeddingReport rep = verify_embedding(cx, e);
  t.isometry_pairs += rep.isometry_pairs;
  if (!rep.ok() && t.embedding_failures++ == 0) t.first_embedding = name + ": " + rep.failures[0];
  if (!segment_is_fundamental(cx, a, e) && t.segment_failures++ == 0)
    t.first_embedding = name + ": [A, gA) differs from [o, go]";
  pair_suites(cx, e, t, name);
  if (!gap) return;
  try {
    SclCertificate c = scl_bound(cx, a, e);
    ++t.certificates;
    t.certified += c.rigor == Rigor::Certified ? 1 : 0;
    if (c.scl_lower < Fraction::make(1, 24L * c.k) && t.gap_failures++ == 0)
      t.first_gap = name + ": " + c.scl_lower.str();
  } catch (const TheoremContradiction& err) {
    if (t.contradictions++ == 0) t.first_gap = name + ": " + err.what();
  } catch (const std::exception& err) {
    if (t.gap_failures++ == 0) t.first_gap = name + ": " + err.what();
  }
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&](int id, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    report(id, o, failed);
  };
  run(1, pentagon_end_to_end);
  run(2, staircase_counts);
  run(3, glide_plane);
  run(4, defect_bounds);
  run(5, oracle_equivalence);
  run(6, dilworth_correctness);

  // Criteria 7, 8 and 10 share one analysis per corpus element.
  auto t0 = std::chrono::steady_clock::now();
  CorpusTally corpus, fixtures;
  std::vector<DefiningGraph> graphs;
  try {
    for (int n = 1; n <= kCorpusGenerators; ++n)
      for (auto& g : graph_classes(n)) graphs.push_back(std::move(g));
    for (const auto& G : graphs) {
      RaagComplex cx(G);
      for (const auto& w : corpus_elements(G, kCorpusWordLength))
        run_element(cx, cx.element(w), G.to_json().dump() + " " + format_word(G, w), true, corpus);
    }
    for (const char* name : {"staircase", "glide-plane"}) {
      auto cx = EuclideanComplex::named(name);
      run_element(cx, cx.generator(), name, false, fixtures);
    }
  } catch (const std::exception& e) {
    corpus.embedding_failures++;
    corpus.first_embedding = std::string("exception: ") + e.what();
  }
  const double corpus_time = seconds_since(t0);

  Outcome c7;
  c7.require(corpus.embedding_failures == 0 && corpus.segment_failures == 0, corpus.first_embedding);
  c7.detail << graphs.size() << " graphs, " << corpus.elements << " elements, " << corpus.isometry_pairs
            << " isometry pairs, violations " << corpus.embedding_failures + corpus.segment_failures
            << ", time=" << corpus_time << "s";
  report(7, c7, failed);

  Outcome c8;
  c8.require(corpus.pair_failures == 0 && fixtures.pair_failures == 0 && fixtures.embedding_failures == 0,
             corpus.first_pair + fixtures.first_pair + fixtures.first_embedding);
  c8.detail << "quadrant " << corpus.quadrant + fixtures.quadrant << ", elbow " << corpus.elbow + fixtures.elbow
            << ", same-way " << corpus.sameway + fixtures.sameway << " checks, violations "
            << corpus.pair_failures + fixtures.pair_failures;
  report(8, c8, failed);

  run(9, [&] {
    Outcome o;
    for (const auto& G : graphs) {
      RaagComplex cx(G);
      RaagLikeReport r = raaglike_check(cx, {kRaagLikeSamples, 3, 1});
      o.require(r.samples >= kRaagLikeSamples && r.ok(),
                G.to_json().dump() + (r.witnesses.empty() ? "" : " " + r.witnesses[0]));
    }
    auto sub = EuclideanComplex::named("subdivided");
    RaagLikeReport r = raaglike_check(sub, {kRaagLikeSamples, 3, 1});
    o.require(r.self_osculations > 0, "subdivided fixture violates (iii)");
    o.detail << graphs.size() << " graphs pass " << kRaagLikeSamples << " samples; subdivided (iii) violations "
             << r.self_osculations << (r.witnesses.empty() ? "" : " e.g. " + r.witnesses[0]);
    return o;
  });

  Outcome c10;
  c10.require(corpus.gap_failures == 0 && corpus.contradictions == 0, corpus.first_gap);
  c10.require(corpus.certificates > 0, "certificates produced");
  c10.detail << corpus.certificates << " certificates (" << corpus.certified << " Certified), below 1/(24k) "
             << corpus.gap_failures << ", theorem contradictions " << corpus.contradictions;
  report(10, c10, failed);
  return failed;
}
