#include "cubical/scl.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace cubical {

namespace {

Hull pair_hull(const Complex& cx, const HalfSpace& h, const HalfSpace& k) {
  auto [a0, a1] = cx.dual_edge(h);
  auto [b0, b1] = cx.dual_edge(k);
  return Hull::of_points(cx, {a0, a1, b0, b1});
}

std::string chain_text(const Complex& cx, const std::vector<HalfSpace>& chain) {
  std::string s = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? ", " : "") + cx.describe(chain[i]);
  return s + "]";
}

// Longest family of chains where each chain's innermost member strictly
// contains the next chain's outermost member. Returns positions into `chains`.
std::vector<std::size_t> longest_family(const IntervalView& view, const std::vector<std::vector<std::size_t>>& chains) {
  const std::size_t m = chains.size();
  std::vector<int> best(m, 0);
  std::vector<long> next(m, -1);
  std::function<int(std::size_t)> solve = [&](std::size_t i) -> int {
    if (best[i]) return best[i];
    int b = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (!view.contains(chains[i].back(), chains[j].front())) continue;
      int c = 1 + solve(j);
      if (c > b) {
        b = c;
        next[i] = static_cast<long>(j);
      }
    }
    return best[i] = b;
  };
  long start = -1;
  int top = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (solve(i) > top) {
      top = best[i];
      start = static_cast<long>(i);
    }
  std::vector<std::size_t> out;
  for (long i = start; i >= 0; i = next[i]) out.push_back(static_cast<std::size_t>(i));
  return out;
}

const char* kind_name(int k) {
  switch (k) {
    case 0: return "inversion";
    case 1: return "transverse translate (i)";
    case 2: return "inter-osculation (ii)";
    default: return "self-osculation (iii)";
  }
}

}  // namespace

// ------------------------------------------------------------- segments ----

Segment Segment::inverse() const {
  Segment out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.chain.push_back(it->complement());
  return out;
}

std::vector<int> Segment::labels(const Complex& cx) const {
  std::vector<int> out;
  for (const auto& h : chain) out.push_back(cx.label(h));
  return out;
}

bool is_segment(const Complex& cx, const std::vector<HalfSpace>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    Hull hull = pair_hull(cx, chain[i], chain[i + 1]);
    if (hull.general_relation(chain[i], chain[i + 1]) != GeneralRelation::Contains) return false;
    if (!hull.tightly_nested(chain[i], chain[i + 1])) return false;
  }
  return true;
}

bool is_g_nested(const Complex& cx, const Segment& s, const Automorphism& g) {
  if (s.empty()) return false;
  HalfSpace first = cx.act_h(g, s.chain.front());
  Hull hull = pair_hull(cx, s.chain.back(), first);
  return hull.general_relation(s.chain.back(), first) == GeneralRelation::Contains;
}

// -------------------------------------------------------- interval views ----

IntervalView IntervalView::of_scope(const Scope& scope) {
  IntervalView v;
  v.x_ = scope.interval().x;
  v.y_ = scope.interval().y;
  v.elements_ = scope.interval().halfspaces;
  const std::size_t n = v.elements_.size();
  v.rel_.assign(n, std::vector<char>(n, kNone));
  v.tight_.assign(n, std::vector<char>(n, 0));
  const Hull& hull = scope.hull();
  for (std::size_t i = 0; i < n; ++i) {
    v.index_[v.elements_[i]] = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      switch (hull.general_relation(v.elements_[i], v.elements_[j])) {
        case GeneralRelation::Contains:
          v.rel_[i][j] = kContains;
          v.rel_[j][i] = kContained;
          v.tight_[i][j] = hull.tightly_nested(v.elements_[i], v.elements_[j]);
          break;
        case GeneralRelation::ContainedIn:
          v.rel_[i][j] = kContained;
          v.rel_[j][i] = kContains;
          v.tight_[j][i] = hull.tightly_nested(v.elements_[j], v.elements_[i]);
          break;
        case GeneralRelation::Transverse:
          v.rel_[i][j] = v.rel_[j][i] = kTransverse;
          break;
        default:
          throw PreconditionError("members of an interval must be nested or transverse");
      }
    }
  }
  return v;
}

IntervalView IntervalView::of_window(const HalfspaceWindow& w, int from_grade, int to_grade) {
  if (from_grade < -w.radius() || to_grade > w.radius() || from_grade > to_grade)
    throw PreconditionError("grades outside the window");
  IntervalView v;
  v.x_ = w.axis_vertex(from_grade);
  v.y_ = w.axis_vertex(to_grade);
  std::vector<std::size_t> idx;
  for (int gr = from_grade; gr < to_grade; ++gr)
    for (int p = 0; p < w.axis().ell; ++p) idx.push_back(*w.index(gr, p));
  const std::size_t n = idx.size();
  v.rel_.assign(n, std::vector<char>(n, kNone));
  v.tight_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    v.elements_.push_back(w.element(idx[i]));
    v.index_[w.element(idx[i])] = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (w.contains(idx[i], idx[j])) {
        v.rel_[i][j] = kContains;
        v.tight_[i][j] = w.tightly_nested(idx[i], idx[j]);
      } else if (w.contains(idx[j], idx[i])) {
        v.rel_[i][j] = kContained;
      } else if (w.transverse(idx[i], idx[j])) {
        v.rel_[i][j] = kTransverse;
      }
    }
  }
  return v;
}

std::optional<std::size_t> IntervalView::index_of(const HalfSpace& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool overlap(const Segment& a, const Segment& b, const IntervalView& view) {
  std::vector<std::size_t> ia, ib;
  for (const auto& h : a.chain) {
    auto i = view.index_of(h);
    if (!i) throw PreconditionError("segment member outside the interval");
    ia.push_back(*i);
  }
  for (const auto& h : b.chain) {
    auto i = view.index_of(h);
    if (!i) throw PreconditionError("segment member outside the interval");
    ib.push_back(*i);
  }
  for (auto i : ia)
    for (auto j : ib)
      if (i == j || view.transverse(i, j)) return true;
  return false;
}

bool overlap(const Segment& a, const Segment& b, const Scope& scope) {
  for (const auto& h : a.chain)
    for (const auto& k : b.chain) {
      Relation r = relation(h, k, scope);
      if (r == Relation::Equal || r == Relation::Transverse) return true;
    }
  return false;
}

// ----------------------------------------------------------------- copies ----

std::optional<Automorphism> raag_copy_witness(const RaagComplex& cx, const Segment& gamma,
                                              const std::vector<HalfSpace>& chain) {
  if (chain.size() != gamma.size() || chain.empty()) return std::nullopt;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain[i].gen != gamma.chain[i].gen || chain[i].sign != gamma.chain[i].sign) return std::nullopt;
  const DefiningGraph& G = cx.graph();
  // Solutions so far: t q P_lam q^-1.
  NormalForm t = multiply(G, chain[0].base, invert(G, gamma.chain[0].base));
  NormalForm q = gamma.chain[0].base;
  std::uint64_t lam = cx.link_mask(gamma.chain[0].gen);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const std::uint64_t L = cx.link_mask(chain[i].gen);
    NormalForm qinv = invert(G, q);
    NormalForm w = multiply(G, qinv, gamma.chain[i].base);
    NormalForm u = multiply(G, multiply(G, qinv, invert(G, t)), chain[i].base);
    // x in P_lam with x w in u P_L; compare (P_lam, P_L) double coset reps.
    auto [alpha, wr] = strip_prefix(G, w, lam);
    auto [alpha2, ur] = strip_prefix(G, u, lam);
    NormalForm w0 = strip_suffix(G, wr, L).first;
    NormalForm u0 = strip_suffix(G, ur, L).first;
    if (w0 != u0) return std::nullopt;
    std::uint64_t theta = lam & L;
    for (Letter c : w0) theta &= G.adjacency_mask(letter_gen(c));
    t = multiply(G, multiply(G, multiply(G, t, q), multiply(G, alpha2, invert(G, alpha))), qinv);
    q = multiply(G, q, alpha);
    lam = theta;
  }
  Automorphism h = cx.element(t);
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (cx.act_h(h, gamma.chain[i]) != chain[i])
      throw InconsistencyError("coset intersection produced a wrong witness for " + chain_text(cx, chain));
  return h;
}

std::optional<Automorphism> bounded_copy_witness(const RaagComplex& cx, const Segment& gamma,
                                                 const std::vector<HalfSpace>& chain, int radius) {
  if (chain.size() != gamma.size() || chain.empty()) return std::nullopt;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (cx.label(chain[i]) != cx.label(gamma.chain[i])) return std::nullopt;
  const DefiningGraph& G = cx.graph();
  const std::uint64_t link = cx.link_mask(gamma.chain[0].gen);
  NormalForm binv = invert(G, gamma.chain[0].base);
  std::set<NormalForm> seen{NormalForm{}};
  std::vector<NormalForm> layer{NormalForm{}};
  for (int len = 0; len <= radius; ++len) {
    for (const auto& z : layer) {
      Automorphism h = cx.element(multiply(G, multiply(G, chain[0].base, z), binv));
      bool ok = true;
      for (std::size_t i = 0; i < chain.size() && ok; ++i) ok = cx.act_h(h, gamma.chain[i]) == chain[i];
      if (ok) return h;
    }
    if (len == radius) break;
    std::vector<NormalForm> next;
    for (const auto& z : layer)
      for (int v = 0; v < G.size(); ++v) {
        if (!((link >> v) & 1U)) continue;
        for (int s : {1, -1}) {
          NormalForm y = multiply(G, z, {make_letter(v, s)});
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<Automorphism> cyclic_copy_witness(const Complex& cx, const Automorphism& generator,
                                                const Segment& gamma, const std::vector<HalfSpace>& chain) {
  if (chain.size() != gamma.size() || chain.empty()) return std::nullopt;
  // g^P is a translation by T, P the order of the coordinate permutation.
  int P = 1;
  Automorphism gp = generator;
  while (gp.perm.size() && !std::is_sorted(gp.perm.begin(), gp.perm.end())) {
    gp = cx.compose(generator, gp);
    if (++P > 5040) throw ComplexError("coordinate permutation of unexpected order");
  }
  const std::vector<int>& T = gp.shift;
  for (int r = 0; r < P; ++r) {
    Automorphism gr = cx.power(generator, r);
    std::optional<long> t;
    bool ok = true;
    for (std::size_t j = 0; j < chain.size() && ok; ++j) {
      HalfSpace img = cx.act_h(gr, gamma.chain[j]);
      if (img.gen != chain[j].gen || img.sign != chain[j].sign) {
        ok = false;
        break;
      }
      long diff = chain[j].base.at(0) - img.base.at(0);
      long step = T.empty() ? 0 : T.at(chain[j].gen);
      if (step == 0) {
        ok = diff == 0;
      } else if (diff % step != 0) {
        ok = false;
      } else if (t && *t != diff / step) {
        ok = false;
      } else {
        t = diff / step;
      }
    }
    if (!ok) continue;
    Automorphism h = cx.power(generator, r + P * static_cast<int>(t.value_or(0)));
    for (std::size_t j = 0; j < chain.size(); ++j)
      if (cx.act_h(h, gamma.chain[j]) != chain[j])
        throw InconsistencyError("cyclic copy witness fails on " + chain_text(cx, chain));
    return h;
  }
  return std::nullopt;
}

CopyFinder::CopyFinder(const Complex& cx, Segment gamma, CopyMethod method, int radius)
    : cx_(&cx), gamma_(std::move(gamma)), method_(method), radius_(radius) {
  labels_ = gamma_.labels(cx);
  const bool raag = dynamic_cast<const RaagComplex*>(&cx) != nullptr;
  exact_ = raag ? method == CopyMethod::Exact : cx.cyclic_generator().has_value();
}

std::optional<Automorphism> CopyFinder::witness(const std::vector<HalfSpace>& chain) {
  auto it = memo_.find(chain);
  if (it != memo_.end()) return it->second;
  std::optional<Automorphism> out;
  if (const auto* raag = dynamic_cast<const RaagComplex*>(cx_)) {
    out = method_ == CopyMethod::Exact ? raag_copy_witness(*raag, gamma_, chain)
                                       : bounded_copy_witness(*raag, gamma_, chain, radius_);
  } else if (auto gen = cx_->cyclic_generator()) {
    out = cyclic_copy_witness(*cx_, *gen, gamma_, chain);
  }
  memo_.emplace(chain, out);
  return out;
}

std::vector<std::vector<std::size_t>> label_chains(const Complex& cx, const IntervalView& view,
                                                   const std::vector<int>& labels) {
  std::vector<std::vector<std::size_t>> out;
  if (labels.empty()) return out;
  std::vector<int> lab(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) lab[i] = cx.label(view.element(i));
  std::vector<std::size_t> cur;
  std::function<void()> extend = [&]() {
    if (cur.size() == labels.size()) {
      out.push_back(cur);
      return;
    }
    const std::size_t last = cur.back();
    for (std::size_t j = 0; j < view.size(); ++j) {
      if (lab[j] != labels[cur.size()] || !view.tightly_nested(last, j)) continue;
      cur.push_back(j);
      extend();
      cur.pop_back();
    }
  };
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (lab[i] != labels[0]) continue;
    cur = {i};
    extend();
  }
  return out;
}

std::vector<SegmentCopy> find_copies(CopyFinder& finder, const IntervalView& view) {
  std::vector<SegmentCopy> out;
  for (const auto& c : label_chains(finder.complex(), view, finder.labels())) {
    SegmentCopy copy;
    for (auto i : c) copy.chain.push_back(view.element(i));
    copy.witness = finder.witness(copy.chain);
    if (copy.witness) out.push_back(std::move(copy));
  }
  return out;
}

CountReport count(CopyFinder& finder, const IntervalView& view) {
  CountReport rep;
  std::vector<std::vector<std::size_t>> copies, open;
  std::vector<Automorphism> witnesses;
  for (const auto& c : label_chains(finder.complex(), view, finder.labels())) {
    ++rep.candidates;
    std::vector<HalfSpace> chain;
    for (auto i : c) chain.push_back(view.element(i));
    if (auto h = finder.witness(chain)) {
      ++rep.copies;
      copies.push_back(c);
      open.push_back(c);
      witnesses.push_back(*h);
    } else if (finder.complete()) {
      ++rep.refuted;
    } else {
      open.push_back(c);
    }
  }
  auto family = longest_family(view, copies);
  rep.lower = static_cast<int>(family.size());
  rep.upper = static_cast<int>(longest_family(view, open).size());
  rep.exact = rep.lower == rep.upper;
  for (std::size_t f : family) {
    SegmentCopy copy;
    for (auto i : copies[f]) copy.chain.push_back(view.element(i));
    copy.witness = witnesses[f];
    rep.collection.push_back(std::move(copy));
  }
  // Members of the family are pairwise nested.
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b)
      for (auto i : copies[family[a]])
        for (auto j : copies[family[b]])
          if (!view.contains(i, j))
            throw InconsistencyError("non-overlapping copies are not nested");
  return rep;
}

// --------------------------------------------------------------- counter ----

SegmentCounter::SegmentCounter(const Complex& cx, Segment gamma, CopyMethod method, int radius)
    : cx_(&cx), forward_(cx, gamma, method, radius), backward_(cx, gamma.inverse(), method, radius) {}

IntervalView SegmentCounter::view(const Vertex& x, const Vertex& y) {
  return IntervalView::of_scope(*hulls_.scope(*cx_, x, y));
}

CountReport SegmentCounter::count(const IntervalView& view, bool reversed) {
  return cubical::count(reversed ? backward_ : forward_, view);
}

CountReport SegmentCounter::count(const Vertex& x, const Vertex& y, bool reversed) {
  if (x == y) return {};
  return count(view(x, y), reversed);
}

OmegaValue SegmentCounter::omega(const IntervalView& view) {
  CountReport c = count(view, false), cb = count(view, true);
  return {c.lower - cb.upper, c.exact && cb.exact};
}

OmegaValue SegmentCounter::omega(const Vertex& x, const Vertex& y) {
  if (x == y) return {};
  auto key = std::make_pair(x, y);
  auto it = omega_cache_.find(key);
  if (it != omega_cache_.end()) return it->second;
  OmegaValue v = omega(view(x, y));
  omega_cache_.emplace(key, v);
  return v;
}

OmegaValue SegmentCounter::psi(const Automorphism& h, const Vertex& O) { return omega(O, cx_->act(h, O)); }

OmegaValue SegmentCounter::phi(const Automorphism& h, const std::optional<Vertex>& x) {
  Vertex base = x ? *x : classify(*cx_, h).axis.base;
  return omega(base, cx_->act(h, base));
}

// ------------------------------------------------------- nested segments ----

NestedSegment maximal_g_nested(const TautEmbedding& e) {
  const HalfspaceWindow& w = *e.window;
  const auto& q = e.partition.Q.at(0);
  if (q.size() < 2) throw InconsistencyError("taut segment is empty");
  const int n = static_cast<int>(q.size()) - 2;
  auto shifted = [&](std::size_t i, int k) {
    auto t = w.translate(i, k);
    if (!t) throw InconsistencyError("translate of a taut half-space leaves the window");
    return *t;
  };
  auto nested = [&](int l, int r) { return w.contains(q[r], shifted(q[l], 1)); };
  int best_l = -1, best_r = -1;
  for (int l = 0; l <= n; ++l)
    for (int r = l; r <= n; ++r) {
      if (!nested(l, r)) continue;
      bool maximal = (l == 0 || !nested(l - 1, r)) && (r == n || !nested(l, r + 1));
      if (!maximal) continue;
      if (best_l < 0 || r - l > best_r - best_l) {
        best_l = l;
        best_r = r;
      }
    }
  if (best_l < 0) throw InconsistencyError("a taut half-space is not nested with its translate");
  if (best_l > 0 && !w.transverse(q[best_l - 1], shifted(q[best_r], -1)))
    throw InconsistencyError("maximal nested segment: left neighbour not transverse to g^-1 H_r");
  if (best_r < n && !w.transverse(shifted(q[best_l], 1), q[best_r + 1]))
    throw InconsistencyError("maximal nested segment: g H_l not transverse to right neighbour");
  NestedSegment out;
  out.l = best_l;
  out.r = best_r;
  out.n = n;
  for (int i = best_l; i <= best_r; ++i) {
    out.indices.push_back(q[i]);
    out.segment.chain.push_back(w.element(q[i]));
  }
  return out;
}

// ---------------------------------------------------------------- defect ----

std::vector<Vertex> ball(const Complex& cx, int radius) {
  std::vector<Vertex> out{cx.origin()};
  std::unordered_set<Vertex, VertexHash> seen{cx.origin()};
  std::size_t begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& nb : cx.neighbors(out[i]))
        if (seen.insert(nb.vertex).second) out.push_back(nb.vertex);
    begin = end;
  }
  return out;
}

DefectReport defect_sample(SegmentCounter& counter, const DefectConfig& config) {
  const Complex& cx = counter.complex();
  DefectReport rep;
  rep.tree = cx.is_tree();
  rep.coboundary_bound = rep.tree ? 3 : 6;
  rep.juncture_bound = rep.tree ? 1 : 2;
  const std::vector<Vertex> pts = ball(cx, config.radius);
  std::mt19937 rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  auto om = [&](const Vertex& a, const Vertex& b) {
    OmegaValue v = counter.omega(a, b);
    rep.exact = rep.exact && v.exact;
    return v.value;
  };
  for (int t = 0; t < config.triples; ++t) {
    std::array<Vertex, 3> tri{pts[pick(rng)], pts[pick(rng)], pts[pick(rng)]};
    const Vertex& x = tri[0];
    const Vertex& y = tri[1];
    const Vertex& z = tri[2];
    int cob = std::abs(om(x, y) + om(y, z) + om(z, x));
    if (cob > rep.max_coboundary) {
      rep.max_coboundary = cob;
      rep.worst_coboundary = tri;
    }
    Vertex m = median(cx, x, y, z);
    for (int a = 0; a < 3; ++a) {
      const Vertex& p = tri[a];
      const Vertex& q = tri[(a + 1) % 3];
      int j = std::abs(om(p, q) - om(p, m) - om(m, q));
      if (j > rep.max_juncture) {
        rep.max_juncture = j;
        rep.worst_juncture = tri;
      }
    }
    ++rep.triples;
    if (rep.max_coboundary > rep.coboundary_bound)
      throw DefectViolation("coboundary " + std::to_string(cob) + " at " + cx.vertex_name(x) + ", " +
                                cx.vertex_name(y) + ", " + cx.vertex_name(z),
                            tri);
    if (rep.max_juncture > rep.juncture_bound)
      throw DefectViolation("juncture residual " + std::to_string(rep.max_juncture) + " at " + cx.vertex_name(x) +
                                ", " + cx.vertex_name(y) + ", " + cx.vertex_name(z),
                            tri);
  }
  return rep;
}

// -------------------------------------------------------------- reversal ----

ReversedCertificate reversed_copy_certificate(const Complex& cx, const Segment& gamma, const HalfspaceWindow& w,
                                              CopyFinder& inverse_finder) {
  ReversedCertificate out;
  const std::vector<int>& labels = inverse_finder.labels();
  if (inverse_finder.gamma() != gamma.inverse()) throw PreconditionError("finder is not for the inverse segment");
  std::vector<int> lab(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) lab[i] = cx.label(w.element(i));
  const bool raag = dynamic_cast<const RaagComplex*>(&cx) != nullptr;
  std::vector<std::size_t> cur;
  std::function<void()> extend = [&]() {
    if (cur.size() == labels.size()) {
      ++out.candidates;
      std::vector<HalfSpace> chain;
      for (auto i : cur) chain.push_back(w.element(i));
      auto h = inverse_finder.witness(chain);
      if (h && raag)
        throw TheoremContradiction("reversed copy " + chain_text(cx, chain) + " via " + cx.element_name(*h), chain,
                                   *h);
      if (h || !inverse_finder.complete()) out.survivors.push_back(chain);
      return;
    }
    const std::size_t last = cur.back();
    // Tightly nested successors may lie beyond the last grade.
    if (w.grade(last) >= w.radius() - 1) out.window_edge = true;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (lab[j] != labels[cur.size()] || !w.tightly_nested(last, j)) continue;
      cur.push_back(j);
      extend();
      cur.pop_back();
    }
  };
  for (int p = 0; p < w.axis().ell; ++p) {
    std::size_t i = *w.index(0, p);
    if (lab[i] != labels.at(0)) continue;
    cur = {i};
    extend();
  }
  out.certified = out.survivors.empty() && !out.window_edge;
  if (out.certified) out.method = out.candidates == 0 ? "label" : "exhaustion";
  return out;
}

// ------------------------------------------------------------ certificate ----

Fraction Fraction::make(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

std::string Fraction::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }

const char* to_string(Rigor r) { return r == Rigor::Certified ? "Certified" : "WindowLimited"; }

Homogenized homogenize(const std::vector<CountRow>& rows, bool reversal_certified) {
  if (rows.empty()) return {Fraction{0, 1}, Rigor::WindowLimited};
  bool linear = reversal_certified;
  for (const auto& r : rows) linear = linear && r.exact && r.c == r.n && r.cbar == 0;
  if (linear) return {Fraction{1, 1}, Rigor::Certified};
  const CountRow& last = rows.back();
  return {Fraction::make(last.c - last.cbar, last.n), Rigor::WindowLimited};
}

SclCertificate scl_bound(const Complex& cx, const Automorphism& g, const SclOptions& options) {
  CharSetAnalysis a = analyze(cx, g, options.analyze);
  if (!a.hyperbolic) throw PreconditionError("element " + cx.element_name(g) + " is elliptic");
  TautEmbedding e = build_embedding(cx, a);
  return scl_bound(cx, a, e, options);
}

SclCertificate scl_bound(const Complex& cx, const CharSetAnalysis& a, const TautEmbedding& e,
                         const SclOptions& options) {
  if (!a.hyperbolic) throw PreconditionError("element " + cx.element_name(a.g) + " is elliptic");
  SclCertificate c;
  c.g = a.g;
  c.k = a.k;
  c.ell = a.axis.ell;
  c.d = a.d;
  c.sigma = e.partition.sigma;
  c.window_certified = a.window_certified;
  c.gamma = maximal_g_nested(e);
  const Automorphism& gk = a.axis.g;
  if (!is_g_nested(cx, c.gamma.segment, gk)) throw InconsistencyError("maximal nested segment fails the hull check");

  const int K = a.window->radius();
  const int N = std::max(1, options.max_n);
  c.count_radius = std::max(K, (N + 1) / 2);
  std::shared_ptr<const HalfspaceWindow> cw = a.window;
  if (c.count_radius > K)
    cw = std::make_shared<HalfspaceWindow>(cx, a.axis, c.count_radius, options.analyze.hull_cap);
  const int R = options.witness_radius > 0 ? options.witness_radius : 2 * a.axis.ell * K;
  CopyFinder forward(cx, c.gamma.segment, options.method, R);
  CopyFinder backward(cx, c.gamma.segment.inverse(), options.method, R);
  for (int n = 1; n <= N; ++n) {
    // [o, g^n o] is carried to [g^-s o, g^(n-s) o] to stay inside the window.
    const int s = n / 2;
    IntervalView view = IntervalView::of_window(*cw, -s, n - s);
    CountReport cr = count(forward, view), cb = count(backward, view);
    CountRow row;
    row.n = n;
    row.c = cr.lower;
    row.cbar = cb.upper;
    row.exact = cr.exact && cb.exact;
    const Automorphism shift = cx.power(gk, s);
    for (const auto& copy : cr.collection) {
      Automorphism h = cx.compose(shift, *copy.witness);
      // Report a power of g when one carries gamma to the same chain.
      std::vector<HalfSpace> target;
      for (const auto& m : c.gamma.segment.chain) target.push_back(cx.act_h(h, m));
      for (int j = 0; j < n; ++j) {
        Automorphism gj = cx.power(gk, j);
        bool same = true;
        for (std::size_t i = 0; i < target.size() && same; ++i)
          same = cx.act_h(gj, c.gamma.segment.chain[i]) == target[i];
        if (same) {
          h = gj;
          break;
        }
      }
      row.witnesses.push_back(std::move(h));
    }
    c.counts.push_back(std::move(row));
  }
  c.reversed = reversed_copy_certificate(cx, c.gamma.segment, *cw, backward);
  Homogenized h = homogenize(c.counts, c.reversed.certified);
  c.phi_hat = h.value;
  c.rigor = h.rigor == Rigor::Certified && a.window_certified ? Rigor::Certified : Rigor::WindowLimited;
  c.defect_bound = cx.is_tree() ? 6 : 12;
  c.scl_lower = c.phi_hat.num > 0 ? Fraction::make(c.phi_hat.num, c.phi_hat.den * 2L * c.defect_bound * c.k)
                                  : Fraction{0, 1};
  return c;
}

nlohmann::json to_json(const Complex& cx, const SclCertificate& c) {
  nlohmann::json j;
  j["element"] = cx.element_name(c.g);
  if (const auto* raag = dynamic_cast<const RaagComplex*>(&cx))
    j["graph"] = raag->graph().to_json();
  else if (const auto* eu = dynamic_cast<const EuclideanComplex*>(&cx))
    j["graph"] = eu->to_json();
  j["k"] = c.k;
  j["ell"] = c.ell;
  j["d"] = c.d;
  auto& sig = j["sigma"] = nlohmann::json::array();
  for (int s : c.sigma) sig.push_back(s + 1);
  j["windowCertified"] = c.window_certified;
  auto& gam = j["gamma"] = nlohmann::json::array();
  for (const auto& h : c.gamma.segment.chain) gam.push_back(cx.describe_json(h));
  j["gammaRange"] = {{"l", c.gamma.l}, {"r", c.gamma.r}, {"n", c.gamma.n}};
  auto& counts = j["counts"] = nlohmann::json::array();
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& r : c.counts) {
    counts.push_back({{"n", r.n}, {"c", r.c}, {"cbar", r.cbar}, {"exact", r.exact}});
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& h : r.witnesses) hs.push_back(cx.element_name(h));
    wit.push_back({{"n", r.n}, {"h", hs}});
  }
  j["phiHatLowerBound"] = c.phi_hat.str();
  j["defectBound"] = c.defect_bound;
  j["sclLowerBound"] = c.scl_lower.str();
  j["sclLowerBoundValue"] = c.scl_lower.value();
  j["rigor"] = to_string(c.rigor);
  j["witnesses"]["copies"] = wit;
  j["witnesses"]["reversedAbsence"] =
      c.reversed.certified ? nlohmann::json(c.reversed.method) : nlohmann::json(nullptr);
  j["witnesses"]["reversedCandidates"] = c.reversed.candidates;
  if (!c.reversed.certified) {
    auto& sv = j["witnesses"]["reversedSurvivors"] = nlohmann::json::array();
    for (const auto& chain : c.reversed.survivors) {
      nlohmann::json ch = nlohmann::json::array();
      for (const auto& h : chain) ch.push_back(cx.describe(h));
      sv.push_back(ch);
    }
    j["witnesses"]["windowEdge"] = c.reversed.window_edge;
  }
  return j;
}

// -------------------------------------------------------------- raaglike ----

RaagLikeReport raaglike_check(const Complex& cx, const RaagLikeOptions& options) {
  RaagLikeReport rep;
  std::mt19937 rng(options.seed);
  const std::vector<Vertex> pts = ball(cx, options.radius);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  const auto* raag = dynamic_cast<const RaagComplex*>(&cx);
  const auto gen = cx.cyclic_generator();
  if (!raag && !gen) throw PreconditionError("raaglike_check needs a RAAG or a cyclic acting group");

  auto random_element = [&]() {
    if (raag) {
      const int ngen = raag->graph().size();
      std::uniform_int_distribution<int> len(1, std::max(1, options.radius));
      std::uniform_int_distribution<int> letter(0, 2 * ngen - 1);
      for (;;) {
        Word w;
        for (int i = len(rng); i > 0; --i) w.push_back(letter(rng));
        Automorphism h = raag->element(w);
        if (!h.element.empty()) return h;
      }
    }
    std::uniform_int_distribution<int> m(1, std::max(1, options.radius));
    std::bernoulli_distribution neg(0.5);
    int p = m(rng);
    return cx.power(*gen, neg(rng) ? -p : p);
  };
  bool seen[4] = {false, false, false, false};
  auto record = [&](int kind, const std::string& text) {
    if (!seen[kind]) rep.witnesses.push_back(std::string(kind_name(kind)) + ": " + text);
    seen[kind] = true;
  };
  std::bernoulli_distribution coin(0.5);
  for (int s = 0; s < options.samples; ++s) {
    const Vertex& v = pts[pick(rng)];
    auto nbs = cx.neighbors(v);
    if (nbs.size() < 1) continue;
    std::uniform_int_distribution<std::size_t> pn(0, nbs.size() - 1);
    const std::size_t first = pn(rng);
    HalfSpace H = coin(rng) ? nbs[first].halfspace : nbs[first].halfspace.complement();
    Automorphism h = random_element();
    ++rep.samples;
    const std::string tag = " with g = " + cx.element_name(h);

    HalfSpace gH = cx.act_h(h, H);
    if (gH == H.complement()) {
      ++rep.inversions;
      record(0, cx.describe(H) + tag);
      continue;
    }
    if (gH != H) {
      Hull hull = pair_hull(cx, H, gH);
      if (hull.general_relation(H, gH) == GeneralRelation::Transverse) {
        ++rep.transverse_translates;
        record(1, cx.describe(H) + tag);
      }
    }
    // (iii): H and g H-bar tightly nested in either order.
    HalfSpace gHb = gH.complement();
    {
      Hull hull = pair_hull(cx, H, gHb);
      GeneralRelation r = hull.general_relation(H, gHb);
      bool tight = (r == GeneralRelation::Contains && hull.tightly_nested(H, gHb)) ||
                   (r == GeneralRelation::ContainedIn && hull.tightly_nested(gHb, H));
      if (tight) {
        ++rep.self_osculations;
        record(3, cx.describe(H) + " and " + cx.describe(gHb) + tag);
      }
    }
    // (ii): a second hyperplane at v, tightly nested with H in some orientation.
    if (nbs.size() < 2) continue;
    std::size_t second = pn(rng);
    if (second == first) second = (second + 1) % nbs.size();
    HalfSpace K = nbs[second].halfspace;
    Hull hk = pair_hull(cx, H, K);
    bool tight = false;
    for (const HalfSpace& a : {H, H.complement()})
      for (const HalfSpace& b : {K, K.complement()})
        if (hk.general_relation(a, b) == GeneralRelation::Contains && hk.tightly_nested(a, b)) tight = true;
    if (!tight) continue;
    ++rep.tight_pairs;
    for (const auto& [P, Q] : {std::pair{H, K}, std::pair{K, H}}) {
      HalfSpace gQ = cx.act_h(h, Q);
      if (gQ.parallel_key_equal(P)) continue;
      Hull hull = pair_hull(cx, P, gQ);
      if (hull.general_relation(P, gQ) == GeneralRelation::Transverse) {
        ++rep.inter_osculations;
        record(2, cx.describe(P) + " and " + cx.describe(gQ) + tag);
        break;
      }
    }
  }
  return rep;
}

nlohmann::json to_json(const RaagLikeReport& r) {
  return {{"samples", r.samples},
          {"tightPairs", r.tight_pairs},
          {"inversions", r.inversions},
          {"transverseTranslates", r.transverse_translates},
          {"interOsculations", r.inter_osculations},
          {"selfOsculations", r.self_osculations},
          {"witnesses", r.witnesses},
          {"ok", r.ok()}};
}

}  // namespace cubical
