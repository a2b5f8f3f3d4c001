#include "cubical/embedding.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace cubical {

namespace {

std::string pair_text(const Complex& cx, const HalfSpace& a, const HalfSpace& b) {
  return cx.describe(a) + " / " + cx.describe(b);
}

int sigma_power(const std::vector<int>& sigma, const std::vector<int>& inv, int i, int k) {
  for (; k > 0; --k) i = sigma[i];
  for (; k < 0; ++k) i = inv[i];
  return i;
}

}  // namespace

// --------------------------------------------------------- partition ----

EquivariantPartition equivariant_partition(const HalfspaceWindow& w, const std::vector<HalfSpace>& antichain) {
  std::vector<std::size_t> A, gA;
  for (const auto& h : antichain) {
    auto i = w.index_of(h);
    if (!i || w.grade(*i) != 0) throw EmbeddingError("antichain member is not in [o, go]");
    A.push_back(*i);
    auto t = w.translate(*i, 1);
    if (!t) throw EmbeddingError("window too small for gA");
    gA.push_back(*t);
  }
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y) {
      if (x != y && !w.transverse(A[x], A[y]))
        throw EmbeddingError("antichain members " + std::to_string(x) + " and " + std::to_string(y) + " are nested");
      if (w.contains(gA[x], A[y]))
        throw EmbeddingError("antichain is not descending at members " + std::to_string(x) + ", " + std::to_string(y));
    }
  // Spanning, on the elements whose neighbouring translates of A fit the window.
  for (std::size_t p = 0; p < w.size(); ++p) {
    int gr = w.grade(p);
    if (gr < -w.radius() + 1 || gr > w.radius() - 2) continue;
    bool above = false, below = false;
    for (std::size_t a : A) {
      for (int r : {gr - 1, gr, gr + 1}) {
        auto t = w.translate(a, r);
        if (!t) continue;
        above |= *t == p || w.contains(*t, p);
        below |= *t == p || w.contains(p, *t);
      }
    }
    if (!above || !below) throw EmbeddingError("antichain does not span at window element " + std::to_string(p));
  }

  std::vector<std::size_t> elems;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.grade(i) == 0) elems.push_back(i);
  elems.insert(elems.end(), gA.begin(), gA.end());
  FinitePoset poset;
  poset.less.assign(elems.size(), std::vector<bool>(elems.size(), false));
  for (std::size_t x = 0; x < elems.size(); ++x)
    for (std::size_t y = 0; y < elems.size(); ++y) poset.less[x][y] = w.contains(elems[y], elems[x]);
  ChainPartition cp = dilworth_with_maximal_chain(poset);
  if (cp.chains.size() != A.size())
    throw EmbeddingError("[A, gA] has width " + std::to_string(cp.chains.size()) + ", expected " +
                         std::to_string(A.size()));

  EquivariantPartition out;
  for (const auto& c : cp.chains) {
    std::vector<std::size_t> q;
    for (int x : c) q.push_back(elems[x]);
    out.Q.push_back(std::move(q));
  }
  std::sort(out.Q.begin() + 1, out.Q.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  const std::size_t d = out.Q.size();
  out.sigma.assign(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& q = out.Q[i];
    if (std::find(A.begin(), A.end(), q.front()) == A.end() || std::find(gA.begin(), gA.end(), q.back()) == gA.end())
      throw EmbeddingError("chain " + std::to_string(i) + " does not run from A to gA");
    for (std::size_t j = 0; j < d; ++j)
      if (*w.translate(out.Q[j].front(), 1) == q.back()) out.sigma[i] = static_cast<int>(j);
  }
  return out;
}

// ---------------------------------------------------------- embedding ----

long TautEmbedding::element_at(int i, int n) const {
  if (i < 0 || i >= d || n < level_lo[i] || n > level_hi[i]) return -1;
  return static_cast<long>(by_level[i][n - level_lo[i]]);
}

std::vector<int> TautEmbedding::act(const std::vector<int>& x, int power) const {
  std::vector<int> y = x;
  for (; power > 0; --power) {
    std::vector<int> z(d);
    for (int i = 0; i < d; ++i) z[i] = y[partition.sigma[i]] + shifts[i];
    y = std::move(z);
  }
  for (; power < 0; ++power) {
    std::vector<int> z(d);
    for (int i = 0; i < d; ++i) z[partition.sigma[i]] = y[i] - shifts[i];
    y = std::move(z);
  }
  return y;
}

std::vector<int> TautEmbedding::coordinates(const Complex& cx, const Vertex& v, int max_translate) const {
  const Hull& hull = window->hull();
  long idx = hull.vertex_index(v);
  if (idx >= 0) return coords[idx];
  const Automorphism& g = window->axis().g;
  for (int m = 1; m <= max_translate; ++m)
    for (int s : {1, -1}) {
      long u = hull.vertex_index(cx.act(cx.power(g, -s * m), v));
      if (u >= 0) return act(coords[u], s * m);
    }
  throw EmbeddingError("vertex " + cx.vertex_name(v) + " is not a translate of a window vertex");
}

TautEmbedding build_embedding(const Complex& /*cx*/, const CharSetAnalysis& analysis) {
  if (!analysis.hyperbolic || !analysis.window) throw PreconditionError("embedding needs a hyperbolic analysis");
  TautEmbedding e;
  e.window = analysis.window;
  const HalfspaceWindow& w = *e.window;
  e.partition = equivariant_partition(w, analysis.antichain);
  e.d = static_cast<int>(e.partition.Q.size());
  const int d = e.d;
  const auto& sigma = e.partition.sigma;
  std::vector<int> inv(d);
  for (int i = 0; i < d; ++i) inv[sigma[i]] = i;
  for (int i = 0; i < d; ++i) {
    e.shifts.push_back(static_cast<int>(e.partition.Q[i].size()) - 1);
    e.antichain.push_back(w.element(e.partition.Q[i].front()));
  }
  for (std::size_t x : e.partition.Q[0]) e.extended_segment.push_back(w.element(x));
  e.taut_segment.assign(e.extended_segment.begin(), e.extended_segment.end() - 1);

  // Level of g^n a_{sigma^n(i)} in chain i.
  auto L = [&](int i, int n) {
    int level = 0;
    for (int k = 0; k < n; ++k) level += e.shifts[sigma_power(sigma, inv, i, k)];
    for (int k = -1; k >= n; --k) level -= e.shifts[sigma_power(sigma, inv, i, k)];
    return level;
  };
  // Grade-0 element at each position: (chain, position within the chain).
  std::vector<std::pair<int, int>> home(w.axis().ell, {-1, -1});
  for (int j = 0; j < d; ++j)
    for (std::size_t p = 0; p + 1 < e.partition.Q[j].size(); ++p)
      home[w.position(e.partition.Q[j][p])] = {j, static_cast<int>(p)};
  for (const auto& [j, p] : home)
    if (j < 0) throw EmbeddingError("a half-space of [o, go] lies on no chain");

  e.chain_of.resize(w.size());
  e.level_of.resize(w.size());
  e.level_lo.assign(d, 1 << 30);
  e.level_hi.assign(d, -(1 << 30));
  for (std::size_t x = 0; x < w.size(); ++x) {
    auto [j, p] = home[w.position(x)];
    int n = w.grade(x);
    int i = sigma_power(sigma, inv, j, -n);
    e.chain_of[x] = i;
    e.level_of[x] = L(i, n) + p;
    e.level_lo[i] = std::min(e.level_lo[i], e.level_of[x]);
    e.level_hi[i] = std::max(e.level_hi[i], e.level_of[x]);
  }
  e.by_level.assign(d, {});
  for (int i = 0; i < d; ++i) e.by_level[i].assign(e.level_hi[i] - e.level_lo[i] + 1, w.size());
  for (std::size_t x = 0; x < w.size(); ++x) {
    auto& slot = e.by_level[e.chain_of[x]][e.level_of[x] - e.level_lo[e.chain_of[x]]];
    if (slot != w.size()) throw EmbeddingError("two half-spaces share a coordinate level");
    slot = x;
  }
  for (int i = 0; i < d; ++i)
    for (std::size_t x : e.by_level[i])
      if (x == w.size()) throw EmbeddingError("chain " + std::to_string(i) + " has a gap in the window");

  const Hull& hull = w.hull();
  e.coords.assign(hull.num_vertices(), std::vector<int>(d));
  for (std::size_t v = 0; v < hull.num_vertices(); ++v) {
    for (int i = 0; i < d; ++i) e.coords[v][i] = e.level_lo[i];
    for (std::size_t x = 0; x < w.size(); ++x)
      if (hull.contains_bit(v, w.hull_index(x))) ++e.coords[v][e.chain_of[x]];
  }
  return e;
}

// ----------------------------------------------------------- quadrants ----

const char* to_string(QuadrantCase c) {
  switch (c) {
    case QuadrantCase::Transverse: return "Transverse";
    case QuadrantCase::Northwest: return "Northwest";
    case QuadrantCase::Southeast: return "Southeast";
  }
  return "?";
}

Projection::Projection(const TautEmbedding& e, int i, int j) {
  std::set<std::vector<int>> all(e.coords.begin(), e.coords.end());
  bool first = true;
  for (const auto& c : e.coords) {
    std::pair<int, int> p{c[i], c[j]};
    if (vset_.insert(p).second) verts_.push_back(p);
    if (first) {
      minx_ = maxx_ = p.first;
      miny_ = maxy_ = p.second;
      first = false;
    }
    minx_ = std::min(minx_, p.first);
    maxx_ = std::max(maxx_, p.first);
    miny_ = std::min(miny_, p.second);
    maxy_ = std::max(maxy_, p.second);
    for (int axis : {i, j}) {
      auto up = c;
      ++up[axis];
      if (!all.count(up)) continue;
      std::array<int, 4> edge{c[i], c[j], up[i], up[j]};
      if (eset_.insert(edge).second) edges_.push_back(edge);
    }
    auto ui = c, uj = c, uij = c;
    ++ui[i];
    ++uj[j];
    ++uij[i];
    ++uij[j];
    if (all.count(ui) && all.count(uj) && all.count(uij)) sset_.insert(p);
  }
}

bool Projection::has_vertex(int x, int y) const { return vset_.count({x, y}) > 0; }

bool Projection::has_edge(int x0, int y0, int x1, int y1) const {
  return eset_.count({x0, y0, x1, y1}) > 0 || eset_.count({x1, y1, x0, y0}) > 0;
}

bool Projection::has_square(int x, int y) const { return sset_.count({x, y}) > 0; }

std::vector<std::pair<int, int>> Projection::squares() const { return {sset_.begin(), sset_.end()}; }

QuadrantResult quadrant_check(const TautEmbedding& e, std::size_t h, std::size_t k) {
  const HalfspaceWindow& w = *e.window;
  QuadrantResult r;
  r.i = e.chain_of[h];
  r.n = e.level_of[h];
  r.j = e.chain_of[k];
  r.m = e.level_of[k];
  if (r.i == r.j) throw PreconditionError("quadrant check needs half-spaces from different chains");
  if (w.transverse(h, k)) return r;
  r.kind = w.contains(h, k) ? QuadrantCase::Northwest : QuadrantCase::Southeast;
  for (const auto& c : e.coords) {
    bool inside = r.kind == QuadrantCase::Northwest ? (c[r.i] <= r.n && c[r.j] >= r.m + 1)
                                                    : (c[r.i] >= r.n + 1 && c[r.j] <= r.m);
    if (inside) {
      r.avoided = false;
      std::ostringstream os;
      os << "vertex (";
      for (std::size_t t = 0; t < c.size(); ++t) os << (t ? "," : "") << c[t];
      os << ") lies in the " << to_string(r.kind) << " quadrant of H^" << r.i + 1 << "_" << r.n << ", H^" << r.j + 1
         << "_" << r.m;
      throw EmbeddingError(os.str());
    }
  }
  return r;
}

bool elbow_check(const TautEmbedding& e, const Projection& p, std::size_t h, std::size_t k) {
  const HalfspaceWindow& w = *e.window;
  if (!w.tightly_nested(k, h)) throw PreconditionError("elbow check needs a tightly nested pair");
  int n = e.level_of[h], m = e.level_of[k];
  bool ok = p.has_edge(n, m, n, m + 1) && p.has_edge(n, m + 1, n + 1, m + 1);
  if (!ok)
    throw EmbeddingError("elbow at H^" + std::to_string(e.chain_of[h] + 1) + "_" + std::to_string(n) + " in H^" +
                         std::to_string(e.chain_of[k] + 1) + "_" + std::to_string(m) + " is missing an edge");
  return true;
}

bool elbow_check(const TautEmbedding& e, std::size_t h, std::size_t k) {
  return elbow_check(e, Projection(e, e.chain_of[h], e.chain_of[k]), h, k);
}

// -------------------------------------------------------------- verify ----

EmbeddingReport verify_embedding(const Complex& cx, const TautEmbedding& e, std::size_t pair_limit, unsigned seed) {
  EmbeddingReport rep;
  const HalfspaceWindow& w = *e.window;
  const Hull& hull = w.hull();
  const std::size_t V = hull.num_vertices();
  const int d = e.d;
  rep.vertices = V;
  auto fail = [&](std::string s) {
    if (rep.failures.size() < 50) rep.failures.push_back(std::move(s));
  };
  auto show = [](const std::vector<int>& c) {
    std::string s = "(";
    for (std::size_t t = 0; t < c.size(); ++t) s += (t ? "," : "") + std::to_string(c[t]);
    return s + ")";
  };

  // Base point and cube.
  const Vertex& o = w.axis().base;
  long oi = hull.vertex_index(o);
  if (oi < 0 || e.coords[oi] != std::vector<int>(d, 0)) fail("base vertex is not mapped to the origin");
  std::map<std::vector<int>, std::size_t> at;
  for (std::size_t v = 0; v < V; ++v)
    if (!at.emplace(e.coords[v], v).second) fail("coordinates " + show(e.coords[v]) + " are not injective");
  for (unsigned mask = 0; mask < (1U << d); ++mask) {
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) c[i] = (mask >> i) & 1U;
    if (!at.count(c)) fail("unit cube corner " + show(c) + " is not occupied");
  }
  for (int i = 0; i < d; ++i) {
    long a = e.element_at(i, 0);
    if (a < 0 || w.element(a) != e.antichain[i]) fail("antichain member " + std::to_string(i) + " is not H^i_0");
  }

  // Coherence: v in H^i_n iff phi(v)_i >= n + 1.
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t x = 0; x < w.size(); ++x) {
      ++rep.coherence_checks;
      bool in = hull.contains_bit(v, w.hull_index(x));
      if (in != (e.coords[v][e.chain_of[x]] >= e.level_of[x] + 1))
        fail("membership of " + cx.vertex_name(hull.vertices()[v]) + " in " + cx.describe(w.element(x)) +
             " disagrees with its coordinates");
    }

  // Isometry.
  auto l1 = [&](std::size_t a, std::size_t b) {
    int s = 0;
    for (int i = 0; i < d; ++i) s += std::abs(e.coords[a][i] - e.coords[b][i]);
    return s;
  };
  auto check_pair = [&](std::size_t a, std::size_t b) {
    ++rep.isometry_pairs;
    if (cx.distance(hull.vertices()[a], hull.vertices()[b]) != l1(a, b))
      fail("distance between " + cx.vertex_name(hull.vertices()[a]) + " and " + cx.vertex_name(hull.vertices()[b]) +
           " is not the L1 distance of the coordinates");
  };
  if (V * (V - 1) / 2 <= pair_limit) {
    for (std::size_t a = 0; a < V; ++a)
      for (std::size_t b = a + 1; b < V; ++b) check_pair(a, b);
  } else {
    rep.isometry_exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, V - 1);
    for (std::size_t t = 0; t < pair_limit; ++t) check_pair(pick(rng), pick(rng));
  }

  // Equivariance.
  for (std::size_t v = 0; v < V; ++v) {
    long u = hull.vertex_index(cx.act(w.axis().g, hull.vertices()[v]));
    if (u < 0) continue;
    ++rep.equivariance_checks;
    if (e.coords[u] != e.act(e.coords[v]))
      fail("equivariance fails at " + cx.vertex_name(hull.vertices()[v]));
  }

  // Taut segment.
  for (std::size_t t = 0; t + 1 < e.extended_segment.size(); ++t) {
    auto a = w.index_of(e.extended_segment[t]), b = w.index_of(e.extended_segment[t + 1]);
    if (!a || !b || !w.tightly_nested(*a, *b))
      fail("extended taut segment is not tightly nested at " + pair_text(cx, e.extended_segment[t], e.extended_segment[t + 1]));
  }

  // Squares, quadrants and elbows per ordered chain pair.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      Projection p(e, i, j);
      for (std::size_t h : e.by_level[i])
        for (std::size_t k : e.by_level[j]) {
          if (i < j && p.has_square(e.level_of[h], e.level_of[k]) != w.transverse(h, k))
            fail("square of " + pair_text(cx, w.element(h), w.element(k)) + " disagrees with transversality");
          ++rep.quadrant_checks;
          try {
            quadrant_check(e, h, k);
          } catch (const EmbeddingError& err) {
            fail(err.what());
          }
          if (w.tightly_nested(k, h)) {
            ++rep.elbow_checks;
            try {
              elbow_check(e, p, h, k);
            } catch (const EmbeddingError& err) {
              fail(err.what());
            }
          }
        }
    }

  // Same way: for K inside K' tightly nested and H on another chain nested
  // with both, the generated quadrants face the same way.
  for (std::size_t k2 = 0; k2 < w.size(); ++k2)
    for (std::size_t k1 = 0; k1 < w.size(); ++k1) {
      if (!w.tightly_nested(k2, k1)) continue;
      for (std::size_t h = 0; h < w.size(); ++h) {
        if (e.chain_of[h] == e.chain_of[k1] || e.chain_of[h] == e.chain_of[k2]) continue;
        if (w.transverse(h, k1) || w.transverse(h, k2)) continue;
        ++rep.sameway_checks;
        if (w.contains(h, k1) != w.contains(h, k2))
          fail("quadrants of " + cx.describe(w.element(h)) + " face opposite ways across " +
               pair_text(cx, w.element(k2), w.element(k1)));
      }
    }
  return rep;
}

// -------------------------------------------------------------- output ----

nlohmann::json to_json(const Complex& cx, const TautEmbedding& e) {
  const HalfspaceWindow& w = *e.window;
  nlohmann::json j;
  j["dimension"] = e.d;
  j["base"] = cx.vertex_name(w.axis().base);
  std::vector<int> sigma1;
  for (int s : e.partition.sigma) sigma1.push_back(s + 1);
  j["sigma"] = sigma1;
  j["shifts"] = e.shifts;
  auto& chains = j["chains"] = nlohmann::json::array();
  for (const auto& q : e.partition.Q) {
    nlohmann::json c = nlohmann::json::array();
    for (std::size_t x : q)
      c.push_back({{"halfspace", cx.describe_json(w.element(x))}, {"level", e.level_of[x]}});
    chains.push_back(std::move(c));
  }
  auto& seg = j["taut_segment"] = nlohmann::json::array();
  for (const auto& h : e.taut_segment) seg.push_back(cx.describe_json(h));
  return j;
}

std::string to_tsv(const Complex& cx, const TautEmbedding& e) {
  const Hull& hull = e.window->hull();
  std::ostringstream os;
  os << "vertex";
  for (int i = 0; i < e.d; ++i) os << "\tx" << i + 1;
  os << "\n";
  std::vector<std::size_t> order(hull.num_vertices());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e.coords[a] < e.coords[b]; });
  for (std::size_t v : order) {
    os << cx.vertex_name(hull.vertices()[v]);
    for (int c : e.coords[v]) os << "\t" << c;
    os << "\n";
  }
  return os.str();
}

std::string to_svg(const Complex& cx, const TautEmbedding& e, int i, int j) {
  if (i < 0 || j < 0 || i >= e.d || j >= e.d || i == j) throw PreconditionError("bad projection coordinates");
  Projection p(e, i, j);
  const int cell = 36, margin = 30;
  const int width = (p.max_x() - p.min_x()) * cell + 2 * margin;
  const int height = (p.max_y() - p.min_y()) * cell + 2 * margin;
  auto X = [&](int x) { return margin + (x - p.min_x()) * cell; };
  auto Y = [&](int y) { return height - margin - (y - p.min_y()) * cell; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (auto [x, y] : p.squares())
    os << "<rect x=\"" << X(x) << "\" y=\"" << Y(y + 1) << "\" width=\"" << cell << "\" height=\"" << cell
       << "\" fill=\"#d8d8e8\"/>\n";
  const HalfspaceWindow& w = *e.window;
  for (const auto& ed : p.edges()) {
    // Label the edge by the half-space it crosses.
    int chain = ed[0] != ed[2] ? i : j;
    int level = ed[0] != ed[2] ? ed[0] : ed[1];
    long x = e.element_at(chain, level);
    os << "<line x1=\"" << X(ed[0]) << "\" y1=\"" << Y(ed[1]) << "\" x2=\"" << X(ed[2]) << "\" y2=\"" << Y(ed[3])
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    if (x >= 0)
      os << "<text x=\"" << (X(ed[0]) + X(ed[2])) / 2 + 3 << "\" y=\"" << (Y(ed[1]) + Y(ed[3])) / 2 - 3
         << "\" font-size=\"9\" fill=\"#555\">" << cx.label_name(cx.label(w.element(x))) << "</text>\n";
  }
  for (auto [x, y] : p.vertices())
    os << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"" << (x == 0 && y == 0 ? 4 : 2.5)
       << "\" fill=\"" << (x == 0 && y == 0 ? "red" : "black") << "\"/>\n";
  os << "<text x=\"4\" y=\"14\" font-size=\"11\">x" << i + 1 << " horizontal, x" << j + 1 << " vertical</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace cubical
