#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cubical/complex.hpp"

namespace cubical {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  Vertex x;
  Vertex y;
  // Along one geodesic from x to y; each contains y and not x.
  std::vector<HalfSpace> halfspaces;
  std::size_t size() const { return halfspaces.size(); }
};

Interval interval(const Complex& cx, const Vertex& x, const Vertex& y);
Interval reversed(const Interval& iv);
Vertex median(const Complex& cx, const Vertex& x, const Vertex& y, const Vertex& z);
bool in_hull(const Complex& cx, const Vertex& z, const Vertex& x, const Vertex& y);

enum class Relation { FirstContainsSecond, SecondContainsFirst, Transverse, Equal };
const char* to_string(Relation r);

// Relation of two arbitrarily oriented half-spaces.
enum class GeneralRelation { Equal, Complement, Contains, ContainedIn, Transverse, Disjoint, Covering };
const char* to_string(GeneralRelation r);

inline constexpr std::size_t kDefaultHullCap = 1'000'000;

using Bits = std::vector<std::uint64_t>;

// Convex hull of finitely many vertices. Its hyperplanes are exactly those
// separating two of the generating points; each hull vertex stores which of
// the (oriented) hull half-spaces contain it.
class Hull {
 public:
  static Hull of_points(const Complex& cx, const std::vector<Vertex>& points,
                        std::size_t cap = kDefaultHullCap);
  // Orients every hull half-space to contain iv.y.
  static Hull of_interval(const Complex& cx, const Interval& iv, std::size_t cap = kDefaultHullCap);

  std::size_t num_halfspaces() const { return halfspaces_.size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Bits& bits(std::size_t v) const { return bits_[v]; }
  bool contains_bit(std::size_t v, std::size_t h) const { return (bits_[v][h >> 6] >> (h & 63)) & 1U; }
  // Index of the hull vertex, or -1.
  long vertex_index(const Vertex& v) const;

  // Index of the hyperplane of h in the hull, or -1. `flipped` reports whether
  // h is the complement of the stored orientation.
  int find(const HalfSpace& h, bool* flipped = nullptr) const;
  bool has_hyperplane(const HalfSpace& h) const { return find(h) >= 0; }

  // Quadrant realisation for stored half-spaces i, j:
  // bit 0: in both, bit 1: in i only, bit 2: in j only, bit 3: in neither.
  unsigned quadrants(int i, int j) const;
  unsigned quadrants(const HalfSpace& h, const HalfSpace& k) const;
  GeneralRelation general_relation(const HalfSpace& h, const HalfSpace& k) const;
  // h strictly contains k.
  bool strictly_contains(const HalfSpace& h, const HalfSpace& k) const;
  // h strictly contains k and no hull half-space lies strictly between.
  bool tightly_nested(const HalfSpace& h, const HalfSpace& k) const;

 private:
  std::vector<HalfSpace> halfspaces_;
  std::unordered_map<HalfSpace, int, HalfSpaceHash> index_;  // keyed with sign +1
  std::vector<Vertex> vertices_;
  std::unordered_map<Vertex, std::size_t, VertexHash> vertex_index_;
  std::vector<Bits> bits_;
  // both_[i] has bit j when some vertex lies in i and j, etc.
  std::vector<Bits> both_, only_, neither_;

  void build(const Complex& cx, const std::vector<Vertex>& points, std::size_t cap);
  void summarise();
};

// An interval together with its hull: the scope in which relations between
// members of the interval are decided.
class Scope {
 public:
  Scope(const Complex& cx, const Vertex& x, const Vertex& y, std::size_t cap = kDefaultHullCap);
  Scope(const Complex& cx, Interval iv, std::size_t cap = kDefaultHullCap);

  const Interval& interval() const { return interval_; }
  const Hull& hull() const { return *hull_; }
  std::shared_ptr<const Hull> hull_ptr() const { return hull_; }
  bool contains(const HalfSpace& h) const;

 private:
  Interval interval_;
  std::shared_ptr<const Hull> hull_;
};

// Both half-spaces must be members of scope.interval() as oriented there.
Relation relation(const HalfSpace& h, const HalfSpace& k, const Scope& scope);
// Requires relation(h, k) to be a strict containment.
bool tightly_nested(const HalfSpace& h, const HalfSpace& k, const Scope& scope);

// Thread-safe memo of interval hulls keyed on the endpoints.
class HullCache {
 public:
  explicit HullCache(std::size_t cap = kDefaultHullCap) : cap_(cap) {}
  std::shared_ptr<const Scope> scope(const Complex& cx, const Vertex& x, const Vertex& y);
  std::size_t size() const;

 private:
  std::size_t cap_;
  mutable std::mutex mu_;
  std::map<std::pair<Vertex, Vertex>, std::shared_ptr<const Scope>> cache_;
};

}  // namespace cubical
