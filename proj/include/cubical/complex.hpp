#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubical/group.hpp"

namespace cubical {

// RAAG backend: a normal form. Euclidean backend: integer coordinates.
using Vertex = std::vector<int>;

// Canonical oriented half-space.
//   RAAG: base = minimal representative of x<lk(v)>, gen = v; sign +1 is the
//         side containing base*v, sign -1 the side containing base.
//   Euclidean: base = {n}, gen = coordinate i; sign +1 is {x_i >= n + 1/2}.
struct HalfSpace {
  std::vector<int> base;
  int gen = 0;
  int sign = 1;

  HalfSpace complement() const { return {base, gen, -sign}; }
  // Same hyperplane, either orientation.
  bool parallel_key_equal(const HalfSpace& o) const { return gen == o.gen && base == o.base; }
  auto operator<=>(const HalfSpace&) const = default;
  bool operator==(const HalfSpace&) const = default;
};

struct HalfSpaceHash {
  std::size_t operator()(const HalfSpace& h) const noexcept;
};
struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

// RAAG backend: left multiplication by `element`.
// Euclidean backend: v -> w with w[j] = v[perm[j]] + shift[j].
struct Automorphism {
  NormalForm element;
  std::vector<int> perm;
  std::vector<int> shift;
  bool operator==(const Automorphism&) const = default;
};

struct Neighbor {
  Vertex vertex;
  HalfSpace halfspace;  // dual to the edge, containing `vertex`
};

class Complex {
 public:
  virtual ~Complex() = default;

  virtual std::string kind() const = 0;
  virtual bool is_vertex(const Vertex& v) const = 0;
  virtual Vertex origin() const = 0;
  virtual bool membership(const Vertex& v, const HalfSpace& h) const = 0;
  virtual std::vector<Neighbor> neighbors(const Vertex& v) const = 0;
  virtual int distance(const Vertex& x, const Vertex& y) const = 0;
  // Half-spaces crossed by one geodesic from x to y, in order, each oriented
  // to contain y.
  virtual std::vector<HalfSpace> geodesic(const Vertex& x, const Vertex& y) const = 0;
  virtual Vertex median(const Vertex& x, const Vertex& y, const Vertex& z) const = 0;
  // Endpoints (outside, inside) of one edge dual to h.
  virtual std::pair<Vertex, Vertex> dual_edge(const HalfSpace& h) const = 0;

  virtual Vertex act(const Automorphism& g, const Vertex& v) const = 0;
  virtual HalfSpace act_h(const Automorphism& g, const HalfSpace& h) const = 0;
  // compose(a, b) acts as a after b.
  virtual Automorphism compose(const Automorphism& a, const Automorphism& b) const = 0;
  virtual Automorphism inverse(const Automorphism& a) const = 0;
  virtual Automorphism identity() const = 0;
  Automorphism power(const Automorphism& g, int n) const;

  // Group-invariant label used only to prune copy searches.
  virtual int label(const HalfSpace& h) const = 0;
  virtual std::string label_name(int label) const = 0;
  virtual std::string describe(const HalfSpace& h) const = 0;
  virtual std::string vertex_name(const Vertex& v) const = 0;
  virtual std::string element_name(const Automorphism& g) const = 0;
  virtual nlohmann::json describe_json(const HalfSpace& h) const = 0;

  // Acting group is <g> for a fixed g (Euclidean fixtures); nullopt for a RAAG.
  virtual std::optional<Automorphism> cyclic_generator() const { return std::nullopt; }
  // True when no two half-spaces are ever transverse.
  virtual bool is_tree() const = 0;
};

class RaagComplex final : public Complex {
 public:
  explicit RaagComplex(DefiningGraph graph);

  const DefiningGraph& graph() const { return graph_; }

  std::string kind() const override { return "raag"; }
  bool is_vertex(const Vertex& v) const override;
  Vertex origin() const override { return {}; }
  bool membership(const Vertex& v, const HalfSpace& h) const override;
  std::vector<Neighbor> neighbors(const Vertex& v) const override;
  int distance(const Vertex& x, const Vertex& y) const override;
  std::vector<HalfSpace> geodesic(const Vertex& x, const Vertex& y) const override;
  Vertex median(const Vertex& x, const Vertex& y, const Vertex& z) const override;
  std::pair<Vertex, Vertex> dual_edge(const HalfSpace& h) const override;

  Vertex act(const Automorphism& g, const Vertex& v) const override;
  HalfSpace act_h(const Automorphism& g, const HalfSpace& h) const override;
  Automorphism compose(const Automorphism& a, const Automorphism& b) const override;
  Automorphism inverse(const Automorphism& a) const override;
  Automorphism identity() const override { return {}; }

  int label(const HalfSpace& h) const override { return make_letter(h.gen, h.sign); }
  std::string label_name(int label) const override { return format_letter(graph_, label); }
  std::string describe(const HalfSpace& h) const override;
  std::string vertex_name(const Vertex& v) const override;
  std::string element_name(const Automorphism& g) const override { return vertex_name(g.element); }
  nlohmann::json describe_json(const HalfSpace& h) const override;
  bool is_tree() const override { return !graph_.has_edges(); }

  // Half-space dual to the edge (v, v*c) that contains v*c.
  HalfSpace edge_halfspace(const Vertex& v, Letter c) const;
  // Canonical half-space from any base vertex of a dual edge.
  HalfSpace canonical(const NormalForm& base, int gen, int sign) const;
  std::uint64_t link_mask(int gen) const { return graph_.adjacency_mask(gen); }
  Automorphism element(const NormalForm& w) const { return {normalize(graph_, w), {}, {}}; }

 private:
  DefiningGraph graph_;
};

// A retained-vertex constraint: the vertex is removed when
// sum(coef[i] * x_i) + constant `op` 0 holds.
struct ForbiddenRule {
  std::vector<int> coef;
  int constant = 0;
  std::string op;  // "<", "<=", ">", ">="
  std::string text;
  bool removes(const Vertex& v) const;
};

ForbiddenRule parse_forbidden_rule(const std::string& text, int d);

// Subcomplex of the standard cubulation of R^d spanned by the retained
// vertices. Distances are taken to be L1; fixtures must be chosen so that this
// holds (checked by the test suite against BFS).
class EuclideanComplex final : public Complex {
 public:
  EuclideanComplex(int d, std::vector<ForbiddenRule> rules, Automorphism g, std::string name = {});

  static EuclideanComplex from_json(const nlohmann::json& j);
  // "staircase", "glide-plane", "subdivided", "plane".
  static EuclideanComplex named(const std::string& name);

  int dim() const { return d_; }
  const std::vector<ForbiddenRule>& rules() const { return rules_; }
  const Automorphism& generator() const { return g_; }
  const std::string& name() const { return name_; }
  nlohmann::json to_json() const;

  std::string kind() const override { return "euclidean"; }
  bool is_vertex(const Vertex& v) const override;
  Vertex origin() const override { return Vertex(d_, 0); }
  bool membership(const Vertex& v, const HalfSpace& h) const override;
  std::vector<Neighbor> neighbors(const Vertex& v) const override;
  int distance(const Vertex& x, const Vertex& y) const override;
  std::vector<HalfSpace> geodesic(const Vertex& x, const Vertex& y) const override;
  Vertex median(const Vertex& x, const Vertex& y, const Vertex& z) const override;
  std::pair<Vertex, Vertex> dual_edge(const HalfSpace& h) const override;

  // Throws when g maps a vertex of the subcomplex outside it.
  Vertex act(const Automorphism& g, const Vertex& v) const override;
  HalfSpace act_h(const Automorphism& g, const HalfSpace& h) const override;
  Automorphism compose(const Automorphism& a, const Automorphism& b) const override;
  Automorphism inverse(const Automorphism& a) const override;
  Automorphism identity() const override;

  int label(const HalfSpace& h) const override;
  std::string label_name(int label) const override;
  std::string describe(const HalfSpace& h) const override;
  std::string vertex_name(const Vertex& v) const override;
  std::string element_name(const Automorphism& g) const override;
  nlohmann::json describe_json(const HalfSpace& h) const override;
  std::optional<Automorphism> cyclic_generator() const override { return g_; }
  bool is_tree() const override;

  // Half-space H^i_n (sign +1) or its complement.
  static HalfSpace coordinate_halfspace(int i, int n, int sign = 1) { return {{n}, i, sign}; }

 private:
  int d_;
  std::vector<ForbiddenRule> rules_;
  Automorphism g_;
  std::string name_;
  std::vector<int> orbit_rep_;
};

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubical
