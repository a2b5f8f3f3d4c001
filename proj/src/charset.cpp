#include "cubical/charset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cubical {

namespace {

void set_bit(Bits& b, std::size_t j) { b[j >> 6] |= std::uint64_t{1} << (j & 63); }

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

// Rejects g when it swaps the sides of a hyperplane dual to an edge at v.
void check_no_inversion(const Complex& cx, const Automorphism& g, const Vertex& v) {
  for (const auto& nb : cx.neighbors(v)) {
    HalfSpace img = cx.act_h(g, nb.halfspace);
    if (img == nb.halfspace.complement())
      throw InversionError("automorphism inverts " + cx.describe(nb.halfspace), nb.halfspace);
  }
}

Classification classify_euclidean(const EuclideanComplex& cx, const Automorphism& g) {
  const int d = cx.dim();
  int radius = 4;
  for (int s : g.shift) radius += std::abs(s);
  // Candidates ordered by (d(v, gv), |v|_1, v).
  std::vector<std::tuple<int, int, Vertex>> cands;
  Vertex v(d, -radius);
  while (true) {
    if (cx.is_vertex(v)) {
      int norm = 0;
      for (int c : v) norm += std::abs(c);
      cands.emplace_back(cx.distance(v, cx.act(g, v)), norm, v);
    }
    int i = 0;
    while (i < d && v[i] == radius) v[i++] = -radius;
    if (i == d) break;
    ++v[i];
  }
  if (cands.empty()) throw ComplexError("no vertex near the origin");
  std::sort(cands.begin(), cands.end());
  const int ell = std::get<0>(cands.front());
  Classification out;
  for (const auto& [len, norm, cand] : cands) {
    if (len != ell) break;
    check_no_inversion(cx, g, cand);
    if (ell == 0) {
      out.axis.g = g;
      out.axis.base = cand;
      return out;
    }
    bool on_axis = true;
    Vertex w = cand;
    for (int n = 1; n <= 4 && on_axis; ++n) {
      w = cx.act(g, w);
      on_axis = cx.distance(cand, w) == n * ell;
    }
    if (!on_axis) continue;
    out.hyperbolic = true;
    out.axis = axis_through(cx, g, cand, ell);
    for (const auto& h : out.axis.fundamental)
      if (cx.act_h(g, h) == h.complement()) throw InversionError("automorphism inverts " + cx.describe(h), h);
    return out;
  }
  throw ComplexError("no minimal vertex near the origin lies on an axis");
}

}  // namespace

AxisData axis_through(const Complex& cx, const Automorphism& g, const Vertex& base, int ell) {
  Vertex image = cx.act(g, base);
  if (cx.distance(base, image) != ell)
    throw InconsistencyError("base vertex " + cx.vertex_name(base) + " is not minimal for " + cx.element_name(g));
  AxisData a;
  a.g = g;
  a.ell = ell;
  a.base = base;
  a.fundamental = cx.geodesic(base, image);
  return a;
}

bool is_minimal(const Complex& cx, const Vertex& v, const AxisData& axis) {
  return cx.distance(v, cx.act(axis.g, v)) == axis.ell;
}

Classification classify(const Complex& cx, const Automorphism& g) {
  if (const auto* raag = dynamic_cast<const RaagComplex*>(&cx)) {
    Classification out;
    auto dec = cyclically_reduce(raag->graph(), g.element);
    Automorphism gg = raag->element(g.element);
    if (dec.core.empty()) {
      out.axis.g = gg;
      out.axis.base = dec.conjugator;
      return out;
    }
    out.hyperbolic = true;
    out.axis = axis_through(cx, gg, dec.conjugator, static_cast<int>(dec.core.size()));
    return out;
  }
  if (const auto* eu = dynamic_cast<const EuclideanComplex*>(&cx)) return classify_euclidean(*eu, g);
  throw PreconditionError("unsupported complex kind " + cx.kind());
}

// ------------------------------------------------------------ window ----

HalfspaceWindow::HalfspaceWindow(const Complex& cx, AxisData axis, int radius, std::size_t cap)
    : cx_(&cx), axis_(std::move(axis)), radius_(radius) {
  if (radius < 1) throw PreconditionError("window radius must be positive");
  if (axis_.ell < 1) throw PreconditionError("window needs a hyperbolic axis");
  for (int n = -radius; n < radius; ++n) {
    Automorphism gn = cx.power(axis_.g, n);
    for (const auto& h : axis_.fundamental) {
      HalfSpace img = cx.act_h(gn, h);
      if (!index_.emplace(img, elements_.size()).second)
        throw InconsistencyError("half-space " + cx.describe(img) + " has two grades");
      elements_.push_back(std::move(img));
    }
  }
  scope_ = std::make_shared<Scope>(cx, axis_vertex(-radius), axis_vertex(radius), cap);
  const auto& iv = scope_->interval();
  if (iv.size() != elements_.size())
    throw InconsistencyError("window interval has " + std::to_string(iv.size()) + " half-spaces, expected " +
                             std::to_string(elements_.size()));
  const std::size_t n = elements_.size();
  hull_index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool flipped = false;
    int h = scope_->hull().find(elements_[i], &flipped);
    if (h < 0 || flipped)
      throw InconsistencyError("translate " + cx.describe(elements_[i]) + " is not in the window interval");
    hull_index_[i] = h;
  }
  const std::size_t words = (n + 63) / 64;
  contains_.assign(n, Bits(words, 0));
  contained_by_.assign(n, Bits(words, 0));
  transverse_.assign(n, Bits(words, 0));
  const Hull& hull = scope_->hull();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      unsigned q = hull.quadrants(hull_index_[i], hull_index_[j]);
      if (q == 0xF) {
        set_bit(transverse_[i], j);
        set_bit(transverse_[j], i);
      } else if (!(q & 2U)) {  // nothing in i only: j contains i
        set_bit(contains_[j], i);
        set_bit(contained_by_[i], j);
      } else if (!(q & 4U)) {
        set_bit(contains_[i], j);
        set_bit(contained_by_[j], i);
      } else {
        throw InconsistencyError("window half-spaces " + cx.describe(elements_[i]) + " and " +
                                 cx.describe(elements_[j]) + " are disjoint or covering");
      }
    }
}

std::optional<std::size_t> HalfspaceWindow::index(int grade, int position) const {
  if (grade < -radius_ || grade >= radius_ || position < 0 || position >= axis_.ell) return std::nullopt;
  return static_cast<std::size_t>(grade + radius_) * axis_.ell + position;
}

std::optional<std::size_t> HalfspaceWindow::index_of(const HalfSpace& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Relation HalfspaceWindow::relation(std::size_t i, std::size_t j) const {
  if (i == j) return Relation::Equal;
  if (transverse(i, j)) return Relation::Transverse;
  return contains(i, j) ? Relation::FirstContainsSecond : Relation::SecondContainsFirst;
}

bool HalfspaceWindow::tightly_nested(std::size_t i, std::size_t j) const {
  if (!contains(i, j)) return false;
  const Bits& a = contains_[i];
  const Bits& b = contained_by_[j];
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & b[w]) return false;
  return true;
}

Vertex HalfspaceWindow::axis_vertex(int n) const { return cx_->act(cx_->power(axis_.g, n), axis_.base); }

nlohmann::json HalfspaceWindow::to_json(const Complex& cx) const {
  nlohmann::json j;
  j["radius"] = radius_;
  j["ell"] = axis_.ell;
  j["base"] = cx.vertex_name(axis_.base);
  auto& el = j["elements"] = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i)
    el.push_back({{"id", i}, {"grade", grade(i)}, {"position", position(i)}, {"halfspace", cx.describe_json(element(i))}});
  auto& rel = j["relations"] = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < size(); ++k) row.push_back(to_string(relation(i, k)));
    rel.push_back(std::move(row));
  }
  return j;
}

// ------------------------------------------------------------- power ----

int non_transverse_power(const Complex& cx, const AxisData& axis, int cap) {
  std::vector<HalfSpace> witnesses;
  for (int k = 1; k <= cap; ++k) {
    Automorphism gk = cx.power(axis.g, k);
    Scope scope(cx, axis.base, cx.act(cx.power(axis.g, k + 1), axis.base));
    witnesses.clear();
    for (const auto& h : axis.fundamental)
      if (relation(h, cx.act_h(gk, h), scope) == Relation::Transverse) witnesses.push_back(h);
    if (witnesses.empty()) return k;
  }
  throw PowerCapError("no non-transverse power up to " + std::to_string(cap), std::move(witnesses));
}

// ------------------------------------------------------------ cliques ----

namespace {

// Depth-first clique search over candidates in ascending index order. With
// `target` > 0 returns the lexicographically first clique of that size;
// otherwise a maximum clique.
class CliqueSearch {
 public:
  CliqueSearch(const HalfspaceWindow& w, Bits allowed, std::size_t target)
      : w_(w), allowed_(std::move(allowed)), target_(target) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> current;
    extend(current, allowed_);
    return best_;
  }

 private:
  const HalfspaceWindow& w_;
  Bits allowed_;
  std::size_t target_;
  std::vector<std::size_t> best_;

  bool done() const { return target_ > 0 && best_.size() >= target_; }

  void extend(std::vector<std::size_t>& current, const Bits& cand) {
    if (done()) return;
    if (target_ > 0 && current.size() == target_) {
      best_ = current;
      return;
    }
    std::size_t avail = popcount(cand);
    if (avail == 0) {
      if (current.size() > best_.size() && (target_ == 0 || current.size() >= target_)) best_ = current;
      return;
    }
    std::size_t need = target_ > 0 ? target_ : best_.size() + 1;
    if (current.size() + avail < need) return;
    Bits rest = cand;
    for (std::size_t word = 0; word < rest.size(); ++word) {
      while (rest[word]) {
        std::size_t i = word * 64 + static_cast<std::size_t>(__builtin_ctzll(rest[word]));
        rest[word] &= rest[word] - 1;
        Bits next(rest.size());
        const Bits& row = w_.transverse_row(i);
        for (std::size_t k = 0; k < rest.size(); ++k) next[k] = rest[k] & row[k];
        current.push_back(i);
        extend(current, next);
        current.pop_back();
        if (done()) return;
        if (current.size() + popcount(rest) < (target_ > 0 ? target_ : best_.size() + 1)) return;
      }
    }
    if (target_ == 0 && current.size() > best_.size()) best_ = current;
  }
};

Bits all_bits(std::size_t n) {
  Bits b((n + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i) set_bit(b, i);
  return b;
}

}  // namespace

std::vector<std::size_t> max_transverse_clique(const HalfspaceWindow& w) {
  return CliqueSearch(w, all_bits(w.size()), 0).run();
}

std::vector<std::size_t> compact_clique(const HalfspaceWindow& w, int d) {
  if (d <= 0) return {};
  const int K = w.radius();
  for (int spread = 0; spread < 2 * K; ++spread)
    for (int lo = -K; lo + spread < K; ++lo) {
      Bits allowed((w.size() + 63) / 64, 0);
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w.grade(i) >= lo && w.grade(i) <= lo + spread) set_bit(allowed, i);
      auto c = CliqueSearch(w, std::move(allowed), static_cast<std::size_t>(d)).run();
      if (c.size() == static_cast<std::size_t>(d)) return c;
    }
  throw InconsistencyError("no clique of size " + std::to_string(d) + " in the window");
}

// ----------------------------------------------------------- recenter ----

AxisData recenter(const Complex& cx, const HalfspaceWindow& w, const std::vector<std::size_t>& antichain,
                  std::shared_ptr<const HalfspaceWindow>* rebuilt) {
  if (antichain.empty()) throw PreconditionError("empty antichain");
  for (std::size_t a : antichain)
    for (std::size_t b : antichain)
      if (a != b && !w.transverse(a, b)) throw PreconditionError("antichain members are not pairwise transverse");
  int lo = w.grade(antichain.front());
  for (std::size_t a : antichain) lo = std::min(lo, w.grade(a));
  std::vector<std::size_t> A;
  for (std::size_t a : antichain) {
    auto t = w.translate(a, -lo);
    if (!t) throw PreconditionError("antichain does not fit the window after translation");
    A.push_back(*t);
  }
  // Target side pattern of the cube's minimal vertex.
  const Hull& hull = w.hull();
  Bits want((hull.num_halfspaces() + 63) / 64, 0);
  for (std::size_t e = 0; e < w.size(); ++e)
    if (std::any_of(A.begin(), A.end(), [&](std::size_t a) { return w.contains(e, a); }))
      set_bit(want, static_cast<std::size_t>(w.hull_index(e)));
  std::optional<Vertex> o;
  for (std::size_t v = 0; v < hull.num_vertices(); ++v)
    if (hull.bits(v) == want) {
      o = hull.vertices()[v];
      break;
    }
  if (!o) throw InconsistencyError("minimal vertex of the antichain cube is missing from the window hull");
  const AxisData& old = w.axis();
  AxisData out = axis_through(cx, old.g, *o, old.ell);

  // [A, gA) must equal [o, go].
  auto built = std::make_shared<HalfspaceWindow>(cx, out, std::max(2, w.radius()));
  const HalfspaceWindow& nw = *built;
  std::vector<std::size_t> A2, gA2;
  for (std::size_t a : A) {
    auto i = nw.index_of(w.element(a));
    if (!i || nw.grade(*i) != 0) throw InconsistencyError("antichain member " + cx.describe(w.element(a)) + " is not in [o, go]");
    A2.push_back(*i);
    gA2.push_back(*nw.translate(*i, 1));
  }
  for (std::size_t e = 0; e < nw.size(); ++e) {
    bool below_a = std::any_of(A2.begin(), A2.end(), [&](std::size_t a) { return a == e || nw.contains(a, e); });
    bool above_ga = std::any_of(gA2.begin(), gA2.end(), [&](std::size_t a) { return nw.contains(e, a); });
    if ((below_a && above_ga) != (nw.grade(e) == 0))
      throw InconsistencyError("[A, gA) differs from [o, go] at " + cx.describe(nw.element(e)));
  }
  if (rebuilt) *rebuilt = std::move(built);
  return out;
}

// ------------------------------------------------------------ analyze ----

CharSetAnalysis analyze(const Complex& cx, const Automorphism& g, const AnalyzeOptions& opt) {
  CharSetAnalysis out;
  out.g = g;
  Classification cl = classify(cx, g);
  if (!cl.hyperbolic) {
    out.axis = cl.axis;
    return out;
  }
  out.hyperbolic = true;
  out.k = non_transverse_power(cx, cl.axis, opt.max_power);
  AxisData axis = out.k == 1 ? cl.axis
                             : axis_through(cx, cx.power(cl.axis.g, out.k), cl.axis.base, cl.axis.ell * out.k);
  const int ell = axis.ell;

  int K = opt.radius > 0 ? opt.radius : std::max(2, ell);
  auto window = std::make_shared<HalfspaceWindow>(cx, axis, K, opt.hull_cap);
  int d = static_cast<int>(max_transverse_clique(*window).size());
  out.dimension_history.push_back(d);
  bool stable = false;
  for (int step = 0; step < opt.max_growth && !stable; ++step) {
    auto larger = std::make_shared<HalfspaceWindow>(cx, axis, K + ell, opt.hull_cap);
    int d2 = static_cast<int>(max_transverse_clique(*larger).size());
    out.dimension_history.push_back(d2);
    stable = d2 == d;
    if (!stable) {
      K = 2 * K;
      window = std::make_shared<HalfspaceWindow>(cx, axis, K, opt.hull_cap);
      d = static_cast<int>(max_transverse_clique(*window).size());
      out.dimension_history.push_back(d);
    }
  }
  out.d = d;
  out.window_certified = stable && d <= ell;

  auto clique = compact_clique(*window, d);
  out.axis = recenter(cx, *window, clique, &out.window);
  int lo = window->grade(clique.front());
  for (std::size_t a : clique) lo = std::min(lo, window->grade(a));
  for (std::size_t a : clique) out.antichain.push_back(window->element(*window->translate(a, -lo)));
  std::sort(out.antichain.begin(), out.antichain.end(), [&](const HalfSpace& x, const HalfSpace& y) {
    return *out.window->index_of(x) < *out.window->index_of(y);
  });
  return out;
}

nlohmann::json to_json(const Complex& cx, const CharSetAnalysis& a) {
  nlohmann::json j;
  j["element"] = cx.element_name(a.g);
  j["hyperbolic"] = a.hyperbolic;
  if (!a.hyperbolic) return j;
  j["power"] = a.k;
  j["translation_length"] = a.axis.ell;
  j["dimension"] = a.d;
  j["window_certified"] = a.window_certified;
  j["dimension_history"] = a.dimension_history;
  j["window_radius"] = a.window ? a.window->radius() : 0;
  j["cube_min_vertex"] = cx.vertex_name(a.axis.base);
  auto& f = j["fundamental"] = nlohmann::json::array();
  for (const auto& h : a.axis.fundamental) f.push_back(cx.describe_json(h));
  auto& an = j["antichain"] = nlohmann::json::array();
  for (const auto& h : a.antichain) an.push_back(cx.describe_json(h));
  return j;
}

}  // namespace cubical
