#include "cubical/median.hpp"

#include <deque>

namespace cubical {

namespace {

HalfSpace key_of(const HalfSpace& h) { return {h.base, h.gen, 1}; }

}  // namespace

Interval interval(const Complex& cx, const Vertex& x, const Vertex& y) {
  return {x, y, cx.geodesic(x, y)};
}

Interval reversed(const Interval& iv) {
  Interval out{iv.y, iv.x, {}};
  for (auto it = iv.halfspaces.rbegin(); it != iv.halfspaces.rend(); ++it) out.halfspaces.push_back(it->complement());
  return out;
}

Vertex median(const Complex& cx, const Vertex& x, const Vertex& y, const Vertex& z) {
  return cx.median(x, y, z);
}

bool in_hull(const Complex& cx, const Vertex& z, const Vertex& x, const Vertex& y) {
  return cx.is_vertex(z) && cx.median(x, z, y) == z;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::FirstContainsSecond: return "FirstContainsSecond";
    case Relation::SecondContainsFirst: return "SecondContainsFirst";
    case Relation::Transverse: return "Transverse";
    case Relation::Equal: return "Equal";
  }
  return "?";
}

const char* to_string(GeneralRelation r) {
  switch (r) {
    case GeneralRelation::Equal: return "Equal";
    case GeneralRelation::Complement: return "Complement";
    case GeneralRelation::Contains: return "Contains";
    case GeneralRelation::ContainedIn: return "ContainedIn";
    case GeneralRelation::Transverse: return "Transverse";
    case GeneralRelation::Disjoint: return "Disjoint";
    case GeneralRelation::Covering: return "Covering";
  }
  return "?";
}

Hull Hull::of_points(const Complex& cx, const std::vector<Vertex>& points, std::size_t cap) {
  if (points.empty()) throw PreconditionError("hull of an empty set");
  Hull h;
  for (std::size_t p = 1; p < points.size(); ++p)
    for (const auto& hs : cx.geodesic(points[0], points[p]))
      if (!h.index_.count(key_of(hs))) {
        h.index_.emplace(key_of(hs), static_cast<int>(h.halfspaces_.size()));
        h.halfspaces_.push_back(hs);
      }
  h.build(cx, points, cap);
  return h;
}

Hull Hull::of_interval(const Complex& cx, const Interval& iv, std::size_t cap) {
  Hull h;
  for (const auto& hs : iv.halfspaces) {
    if (h.index_.count(key_of(hs))) throw PreconditionError("interval lists a hyperplane twice");
    h.index_.emplace(key_of(hs), static_cast<int>(h.halfspaces_.size()));
    h.halfspaces_.push_back(hs);
  }
  h.build(cx, {iv.x, iv.y}, cap);
  return h;
}

void Hull::build(const Complex& cx, const std::vector<Vertex>& points, std::size_t cap) {
  const std::size_t words = (halfspaces_.size() + 63) / 64;
  Bits start(words, 0);
  for (std::size_t i = 0; i < halfspaces_.size(); ++i)
    if (cx.membership(points[0], halfspaces_[i])) start[i >> 6] |= std::uint64_t{1} << (i & 63);
  vertices_.push_back(points[0]);
  vertex_index_.emplace(points[0], 0);
  bits_.push_back(std::move(start));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (auto& nb : cx.neighbors(vertices_[u])) {
      auto it = index_.find(key_of(nb.halfspace));
      if (it == index_.end()) continue;
      if (vertex_index_.count(nb.vertex)) continue;
      if (vertices_.size() >= cap)
        throw ResourceError("hull exceeds the cap of " + std::to_string(cap) + " vertices");
      Bits b = bits_[u];
      int i = it->second;
      b[i >> 6] ^= std::uint64_t{1} << (i & 63);
      vertex_index_.emplace(nb.vertex, vertices_.size());
      vertices_.push_back(std::move(nb.vertex));
      bits_.push_back(std::move(b));
      queue.push_back(vertices_.size() - 1);
    }
  }
  summarise();
}

void Hull::summarise() {
  const std::size_t n = halfspaces_.size();
  const std::size_t words = (n + 63) / 64;
  both_.assign(n, Bits(words, 0));
  only_.assign(n, Bits(words, 0));
  neither_.assign(n, Bits(words, 0));
  for (const auto& b : bits_) {
    for (std::size_t i = 0; i < n; ++i) {
      bool in = (b[i >> 6] >> (i & 63)) & 1U;
      auto& a = in ? both_[i] : neither_[i];
      for (std::size_t w = 0; w < words; ++w) {
        if (in) {
          a[w] |= b[w];
          only_[i][w] |= ~b[w];
        } else {
          a[w] |= ~b[w];
        }
      }
    }
  }
}

long Hull::vertex_index(const Vertex& v) const {
  auto it = vertex_index_.find(v);
  return it == vertex_index_.end() ? -1 : static_cast<long>(it->second);
}

int Hull::find(const HalfSpace& h, bool* flipped) const {
  auto it = index_.find(key_of(h));
  if (it == index_.end()) return -1;
  if (flipped) *flipped = halfspaces_[it->second].sign != h.sign;
  return it->second;
}

unsigned Hull::quadrants(int i, int j) const {
  auto bit = [](const Bits& b, int k) { return static_cast<unsigned>((b[k >> 6] >> (k & 63)) & 1U); };
  return bit(both_[i], j) | (bit(only_[i], j) << 1) | (bit(only_[j], i) << 2) | (bit(neither_[i], j) << 3);
}

unsigned Hull::quadrants(const HalfSpace& h, const HalfSpace& k) const {
  bool fh = false, fk = false;
  int i = find(h, &fh), j = find(k, &fk);
  if (i < 0 || j < 0) throw PreconditionError("half-space does not cross the hull");
  unsigned q = quadrants(i, j);
  unsigned out = 0;
  // Stored quadrant (a, b) with a = in stored i, b = in stored j.
  const int in_i[4] = {1, 1, 0, 0};
  const int in_j[4] = {1, 0, 1, 0};
  for (int s = 0; s < 4; ++s) {
    if (!((q >> s) & 1U)) continue;
    int a = in_i[s] ^ (fh ? 1 : 0);
    int b = in_j[s] ^ (fk ? 1 : 0);
    int t = a ? (b ? 0 : 1) : (b ? 2 : 3);
    out |= 1U << t;
  }
  return out;
}

GeneralRelation Hull::general_relation(const HalfSpace& h, const HalfSpace& k) const {
  if (h == k) return GeneralRelation::Equal;
  if (h == k.complement()) return GeneralRelation::Complement;
  unsigned q = quadrants(h, k);
  if (q == 15) return GeneralRelation::Transverse;
  if (!(q & 2U)) return GeneralRelation::ContainedIn;
  if (!(q & 4U)) return GeneralRelation::Contains;
  if (!(q & 1U)) return GeneralRelation::Disjoint;
  return GeneralRelation::Covering;
}

bool Hull::strictly_contains(const HalfSpace& h, const HalfSpace& k) const {
  return general_relation(h, k) == GeneralRelation::Contains;
}

bool Hull::tightly_nested(const HalfSpace& h, const HalfSpace& k) const {
  if (!strictly_contains(h, k)) return false;
  for (const auto& l : halfspaces_) {
    if (l.parallel_key_equal(h) || l.parallel_key_equal(k)) continue;
    for (const HalfSpace& lo : {l, l.complement()})
      if (strictly_contains(h, lo) && strictly_contains(lo, k)) return false;
  }
  return true;
}

Scope::Scope(const Complex& cx, const Vertex& x, const Vertex& y, std::size_t cap)
    : Scope(cx, cubical::interval(cx, x, y), cap) {}

Scope::Scope(const Complex& cx, Interval iv, std::size_t cap)
    : interval_(std::move(iv)), hull_(std::make_shared<Hull>(Hull::of_interval(cx, interval_, cap))) {}

bool Scope::contains(const HalfSpace& h) const {
  bool flipped = false;
  return hull_->find(h, &flipped) >= 0 && !flipped;
}

Relation relation(const HalfSpace& h, const HalfSpace& k, const Scope& scope) {
  if (!scope.contains(h) || !scope.contains(k)) throw PreconditionError("half-space not in scope");
  switch (scope.hull().general_relation(h, k)) {
    case GeneralRelation::Equal: return Relation::Equal;
    case GeneralRelation::Contains: return Relation::FirstContainsSecond;
    case GeneralRelation::ContainedIn: return Relation::SecondContainsFirst;
    case GeneralRelation::Transverse: return Relation::Transverse;
    default: break;
  }
  throw PreconditionError("members of an interval must be nested or transverse");
}

bool tightly_nested(const HalfSpace& h, const HalfSpace& k, const Scope& scope) {
  Relation r = relation(h, k, scope);
  if (r == Relation::FirstContainsSecond) return scope.hull().tightly_nested(h, k);
  if (r == Relation::SecondContainsFirst) return scope.hull().tightly_nested(k, h);
  throw PreconditionError("tightly_nested needs a nested pair");
}

std::shared_ptr<const Scope> HullCache::scope(const Complex& cx, const Vertex& x, const Vertex& y) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({x, y});
    if (it != cache_.end()) return it->second;
  }
  auto s = std::make_shared<const Scope>(cx, x, y, cap_);
  std::lock_guard<std::mutex> lock(mu_);
  cache_[{x, y}] = s;
  return s;
}

std::size_t HullCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

}  // namespace cubical
