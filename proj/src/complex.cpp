#include "cubical/complex.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace cubical {

namespace {

std::size_t hash_ints(const std::vector<int>& v, std::size_t seed) {
  for (int x : v) seed ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

}  // namespace

std::size_t HalfSpaceHash::operator()(const HalfSpace& h) const noexcept {
  return hash_ints(h.base, static_cast<std::size_t>(h.gen) * 31 + static_cast<std::size_t>(h.sign + 1));
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept { return hash_ints(v, v.size()); }

Automorphism Complex::power(const Automorphism& g, int n) const {
  Automorphism base = n < 0 ? inverse(g) : g;
  Automorphism out = identity();
  for (int i = 0; i < std::abs(n); ++i) out = compose(base, out);
  return out;
}

// ---------------------------------------------------------------- RAAG ----

RaagComplex::RaagComplex(DefiningGraph graph) : graph_(std::move(graph)) {}

bool RaagComplex::is_vertex(const Vertex& v) const {
  for (int c : v)
    if (c < 0 || letter_gen(c) >= graph_.size()) return false;
  return normalize(graph_, v) == v;
}

HalfSpace RaagComplex::canonical(const NormalForm& base, int gen, int sign) const {
  return {strip_suffix(graph_, base, link_mask(gen)).first, gen, sign};
}

HalfSpace RaagComplex::edge_halfspace(const Vertex& v, Letter c) const {
  if (letter_sign(c) > 0) return canonical(v, letter_gen(c), 1);
  return canonical(multiply(graph_, v, {c}), letter_gen(c), -1);
}

bool RaagComplex::membership(const Vertex& v, const HalfSpace& h) const {
  NormalForm d = multiply(graph_, invert(graph_, h.base), v);
  bool plus_side = has_first_letter(graph_, d, make_letter(h.gen, 1));
  return h.sign > 0 ? plus_side : !plus_side;
}

std::vector<Neighbor> RaagComplex::neighbors(const Vertex& v) const {
  std::vector<Neighbor> out;
  out.reserve(2 * static_cast<std::size_t>(graph_.size()));
  for (Letter c = 0; c < 2 * graph_.size(); ++c) {
    Vertex w = multiply(graph_, v, {c});
    out.push_back({std::move(w), edge_halfspace(v, c)});
  }
  return out;
}

int RaagComplex::distance(const Vertex& x, const Vertex& y) const {
  return static_cast<int>(multiply(graph_, invert(graph_, x), y).size());
}

std::vector<HalfSpace> RaagComplex::geodesic(const Vertex& x, const Vertex& y) const {
  NormalForm w = multiply(graph_, invert(graph_, x), y);
  std::vector<HalfSpace> out;
  out.reserve(w.size());
  Vertex cur = x;
  for (Letter c : w) {
    out.push_back(edge_halfspace(cur, c));
    cur = multiply(graph_, cur, {c});
  }
  return out;
}

Vertex RaagComplex::median(const Vertex& x, const Vertex& y, const Vertex& z) const {
  NormalForm to_y = multiply(graph_, invert(graph_, x), y);
  NormalForm to_z = multiply(graph_, invert(graph_, x), z);
  Word path;
  for (;;) {
    auto fy = first_letters(graph_, to_y);
    auto fz = first_letters(graph_, to_z);
    Letter step = -1;
    for (Letter c : fy)
      if (std::binary_search(fz.begin(), fz.end(), c)) {
        step = c;
        break;
      }
    if (step < 0) break;
    path.push_back(step);
    to_y = multiply(graph_, {letter_inv(step)}, to_y);
    to_z = multiply(graph_, {letter_inv(step)}, to_z);
  }
  return multiply(graph_, x, path);
}

std::pair<Vertex, Vertex> RaagComplex::dual_edge(const HalfSpace& h) const {
  Vertex a = h.base;
  Vertex b = multiply(graph_, h.base, {make_letter(h.gen, 1)});
  if (h.sign > 0) return {a, b};
  return {b, a};
}

Vertex RaagComplex::act(const Automorphism& g, const Vertex& v) const {
  return multiply(graph_, g.element, v);
}

HalfSpace RaagComplex::act_h(const Automorphism& g, const HalfSpace& h) const {
  return canonical(multiply(graph_, g.element, h.base), h.gen, h.sign);
}

Automorphism RaagComplex::compose(const Automorphism& a, const Automorphism& b) const {
  return {multiply(graph_, a.element, b.element), {}, {}};
}

Automorphism RaagComplex::inverse(const Automorphism& a) const {
  return {invert(graph_, a.element), {}, {}};
}

std::string RaagComplex::vertex_name(const Vertex& v) const {
  return v.empty() ? std::string("1") : format_word(graph_, v);
}

std::string RaagComplex::describe(const HalfSpace& h) const {
  return vertex_name(h.base) + "." + graph_.name(h.gen) + (h.sign > 0 ? "+" : "-");
}

nlohmann::json RaagComplex::describe_json(const HalfSpace& h) const {
  return {{"witness", vertex_name(h.base)},
          {"generator", graph_.name(h.gen)},
          {"orientation", h.sign > 0 ? "+" : "-"},
          {"label", label_name(label(h))}};
}

// ----------------------------------------------------------- Euclidean ----

namespace {

struct RuleParser {
  const std::string& s;
  int d;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("rule '" + s + "': " + what + " at column " + std::to_string(pos + 1));
  }
  int variable(const std::string& name) const {
    if (name.size() > 1 && name[0] == 'x') {
      int k = std::atoi(name.c_str() + 1);
      if (k >= 1 && k <= d) return k - 1;
    }
    static const std::string letters = "xyzw";
    if (name.size() == 1) {
      auto p = letters.find(name[0]);
      if (p != std::string::npos && static_cast<int>(p) < d) return static_cast<int>(p);
    }
    return -1;
  }
  // Parses a linear expression, accumulating into coef / constant with `sign`.
  void expression(std::vector<int>& coef, int& constant, int sign) {
    bool first = true;
    for (;;) {
      skip();
      int term_sign = 1;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        term_sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        skip();
      } else if (!first) {
        return;
      }
      first = false;
      long num = 1;
      bool have_num = false;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        num = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
          num = 10 * num + (s[pos++] - '0');
        have_num = true;
        skip();
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
          skip();
        }
      }
      if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::string name;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) name += s[pos++];
        int var = variable(name);
        if (var < 0) fail("unknown coordinate '" + name + "'");
        coef[var] += sign * term_sign * static_cast<int>(num);
      } else if (have_num) {
        constant += sign * term_sign * static_cast<int>(num);
      } else {
        fail("expected a term");
      }
    }
  }
};

}  // namespace

ForbiddenRule parse_forbidden_rule(const std::string& text, int d) {
  ForbiddenRule r;
  r.coef.assign(d, 0);
  r.text = text;
  RuleParser p{text, d};
  p.expression(r.coef, r.constant, 1);
  p.skip();
  for (const char* op : {"<=", ">=", "<", ">"}) {
    std::string o(op);
    if (text.compare(p.pos, o.size(), o) == 0) {
      r.op = o;
      p.pos += o.size();
      break;
    }
  }
  if (r.op.empty()) p.fail("expected a comparison");
  p.expression(r.coef, r.constant, -1);
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return r;
}

bool ForbiddenRule::removes(const Vertex& v) const {
  long e = constant;
  for (std::size_t i = 0; i < coef.size(); ++i) e += static_cast<long>(coef[i]) * v[i];
  if (op == "<") return e < 0;
  if (op == "<=") return e <= 0;
  if (op == ">") return e > 0;
  return e >= 0;
}

EuclideanComplex::EuclideanComplex(int d, std::vector<ForbiddenRule> rules, Automorphism g,
                                   std::string name)
    : d_(d), rules_(std::move(rules)), g_(std::move(g)), name_(std::move(name)) {
  if (d_ < 1) throw ComplexError("dimension must be positive");
  if (static_cast<int>(g_.perm.size()) != d_ || static_cast<int>(g_.shift.size()) != d_)
    throw ComplexError("automorphism perm/shift must have length d");
  std::vector<int> sorted = g_.perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < d_; ++i)
    if (sorted[i] != i) throw ComplexError("automorphism perm is not a permutation");
  for (const auto& r : rules_)
    if (static_cast<int>(r.coef.size()) != d_) throw ComplexError("rule dimension mismatch");
  orbit_rep_.assign(d_, -1);
  for (int i = 0; i < d_; ++i) {
    if (orbit_rep_[i] >= 0) continue;
    int j = i;
    do {
      orbit_rep_[j] = i;
      j = g_.perm[j];
    } while (j != i);
  }
  if (!is_vertex(origin())) throw ComplexError("the origin must be a vertex of the subcomplex");
}

EuclideanComplex EuclideanComplex::from_json(const nlohmann::json& j) {
  if (j.is_string()) return named(j.get<std::string>());
  if (!j.is_object() || !j.contains("d")) throw ParseError("fixture JSON needs \"d\"");
  int d = j.at("d").get<int>();
  std::vector<ForbiddenRule> rules;
  if (j.contains("forbidden"))
    for (const auto& r : j.at("forbidden")) {
      std::string text = r.is_string() ? r.get<std::string>() : r.at("rule").get<std::string>();
      rules.push_back(parse_forbidden_rule(text, d));
    }
  Automorphism g;
  if (j.contains("automorphism")) {
    g.perm = j.at("automorphism").at("perm").get<std::vector<int>>();
    g.shift = j.at("automorphism").at("shift").get<std::vector<int>>();
  } else {
    throw ParseError("fixture JSON needs an \"automorphism\"");
  }
  return EuclideanComplex(d, std::move(rules), std::move(g), j.value("name", std::string("custom")));
}

EuclideanComplex EuclideanComplex::named(const std::string& name) {
  if (name == "staircase")
    return EuclideanComplex(2, {parse_forbidden_rule("y < x - 1", 2)}, {{}, {0, 1}, {2, 2}}, name);
  if (name == "glide-plane") return EuclideanComplex(2, {}, {{}, {1, 0}, {1, 0}}, name);
  if (name == "subdivided")
    return EuclideanComplex(2, {parse_forbidden_rule("x + y < 0", 2), parse_forbidden_rule("x + y > 1", 2)},
                            {{}, {1, 0}, {1, -1}}, name);
  if (name == "plane") return EuclideanComplex(2, {}, {{}, {0, 1}, {1, 1}}, name);
  throw ParseError("unknown fixture '" + name + "'");
}

nlohmann::json EuclideanComplex::to_json() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : rules_) rules.push_back({{"rule", r.text}});
  return {{"name", name_}, {"d", d_}, {"forbidden", rules},
          {"automorphism", {{"perm", g_.perm}, {"shift", g_.shift}}}};
}

bool EuclideanComplex::is_vertex(const Vertex& v) const {
  if (static_cast<int>(v.size()) != d_) return false;
  return std::none_of(rules_.begin(), rules_.end(), [&](const ForbiddenRule& r) { return r.removes(v); });
}

bool EuclideanComplex::membership(const Vertex& v, const HalfSpace& h) const {
  bool plus_side = v.at(h.gen) >= h.base.at(0) + 1;
  return h.sign > 0 ? plus_side : !plus_side;
}

std::vector<Neighbor> EuclideanComplex::neighbors(const Vertex& v) const {
  std::vector<Neighbor> out;
  for (int i = 0; i < d_; ++i) {
    for (int s : {1, -1}) {
      Vertex w = v;
      w[i] += s;
      if (!is_vertex(w)) continue;
      HalfSpace h = s > 0 ? coordinate_halfspace(i, v[i], 1) : coordinate_halfspace(i, v[i] - 1, -1);
      out.push_back({std::move(w), h});
    }
  }
  return out;
}

int EuclideanComplex::distance(const Vertex& x, const Vertex& y) const {
  int s = 0;
  for (int i = 0; i < d_; ++i) s += std::abs(x[i] - y[i]);
  return s;
}

std::vector<HalfSpace> EuclideanComplex::geodesic(const Vertex& x, const Vertex& y) const {
  std::vector<HalfSpace> out;
  Vertex cur = x;
  while (cur != y) {
    bool moved = false;
    for (int i = 0; i < d_ && !moved; ++i) {
      if (cur[i] == y[i]) continue;
      int s = y[i] > cur[i] ? 1 : -1;
      Vertex w = cur;
      w[i] += s;
      if (!is_vertex(w)) continue;
      out.push_back(s > 0 ? coordinate_halfspace(i, cur[i], 1) : coordinate_halfspace(i, cur[i] - 1, -1));
      cur = std::move(w);
      moved = true;
    }
    if (!moved)
      throw ComplexError("no monotone path from " + vertex_name(x) + " to " + vertex_name(y) +
                         " inside the subcomplex");
  }
  return out;
}

Vertex EuclideanComplex::median(const Vertex& x, const Vertex& y, const Vertex& z) const {
  Vertex m(d_);
  for (int i = 0; i < d_; ++i) m[i] = std::max(std::min(x[i], y[i]), std::min(std::max(x[i], y[i]), z[i]));
  return m;
}

std::pair<Vertex, Vertex> EuclideanComplex::dual_edge(const HalfSpace& h) const {
  int i = h.gen;
  int n = h.base.at(0);
  for (int r = 0; r <= std::abs(n) + 64; ++r) {
    for (int center : {n, 0}) {
      // Other coordinates range over the box of radius r around `center`.
      std::vector<int> others(d_, center - r);
      for (;;) {
        Vertex a = others;
        a[i] = n;
        Vertex b = a;
        b[i] = n + 1;
        if (is_vertex(a) && is_vertex(b)) return h.sign > 0 ? std::pair{a, b} : std::pair{b, a};
        int k = 0;
        for (; k < d_; ++k) {
          if (k == i) continue;
          if (others[k] < center + r) {
            ++others[k];
            break;
          }
          others[k] = center - r;
        }
        if (k == d_) break;
      }
    }
  }
  throw ComplexError("hyperplane " + describe(h) + " does not meet the subcomplex near the origin");
}

Vertex EuclideanComplex::act(const Automorphism& g, const Vertex& v) const {
  Vertex w(d_);
  for (int j = 0; j < d_; ++j) w[j] = v.at(g.perm[j]) + g.shift[j];
  if (is_vertex(v) && !is_vertex(w))
    throw ComplexError("automorphism does not preserve subcomplex: " + vertex_name(v) + " -> " +
                       vertex_name(w));
  return w;
}

HalfSpace EuclideanComplex::act_h(const Automorphism& g, const HalfSpace& h) const {
  for (int j = 0; j < d_; ++j)
    if (g.perm[j] == h.gen) return coordinate_halfspace(j, h.base.at(0) + g.shift[j], h.sign);
  throw ComplexError("bad coordinate in half-space");
}

Automorphism EuclideanComplex::compose(const Automorphism& a, const Automorphism& b) const {
  Automorphism out{{}, std::vector<int>(d_), std::vector<int>(d_)};
  for (int j = 0; j < d_; ++j) {
    out.perm[j] = b.perm[a.perm[j]];
    out.shift[j] = b.shift[a.perm[j]] + a.shift[j];
  }
  return out;
}

Automorphism EuclideanComplex::inverse(const Automorphism& a) const {
  Automorphism out{{}, std::vector<int>(d_), std::vector<int>(d_)};
  for (int j = 0; j < d_; ++j) out.perm[a.perm[j]] = j;
  for (int i = 0; i < d_; ++i) out.shift[i] = -a.shift[out.perm[i]];
  return out;
}

Automorphism EuclideanComplex::identity() const {
  Automorphism out{{}, std::vector<int>(d_), std::vector<int>(d_, 0)};
  for (int i = 0; i < d_; ++i) out.perm[i] = i;
  return out;
}

int EuclideanComplex::label(const HalfSpace& h) const { return make_letter(orbit_rep_.at(h.gen), h.sign); }

std::string EuclideanComplex::label_name(int label) const {
  return "x" + std::to_string(letter_gen(label) + 1) + (letter_sign(label) > 0 ? "+" : "-");
}

std::string EuclideanComplex::describe(const HalfSpace& h) const {
  std::string s = "H^" + std::to_string(h.gen + 1) + "_" + std::to_string(h.base.at(0));
  return h.sign > 0 ? s : "~" + s;
}

std::string EuclideanComplex::vertex_name(const Vertex& v) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string EuclideanComplex::element_name(const Automorphism& g) const {
  std::ostringstream os;
  os << "perm[";
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << g.perm[i];
  os << "]+shift[";
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << g.shift[i];
  os << ']';
  return os.str();
}

nlohmann::json EuclideanComplex::describe_json(const HalfSpace& h) const {
  return {{"coordinate", h.gen + 1}, {"level", h.base.at(0)}, {"orientation", h.sign > 0 ? "+" : "-"},
          {"label", label_name(label(h))}};
}

bool EuclideanComplex::is_tree() const {
  if (d_ == 1) return true;
  // Fixtures are periodic, so a square near the origin exists iff any does.
  const int r = 8;
  Vertex v(d_, -r);
  for (;;) {
    if (is_vertex(v)) {
      for (int i = 0; i < d_; ++i)
        for (int j = i + 1; j < d_; ++j) {
          Vertex a = v, b = v, c = v;
          a[i] += 1;
          b[j] += 1;
          c[i] += 1;
          c[j] += 1;
          if (is_vertex(a) && is_vertex(b) && is_vertex(c)) return false;
        }
    }
    int k = 0;
    for (; k < d_; ++k) {
      if (v[k] < r) {
        ++v[k];
        break;
      }
      v[k] = -r;
    }
    if (k == d_) return true;
  }
}

}  // namespace cubical
