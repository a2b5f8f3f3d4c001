#include "cubical/group.hpp"

#include <algorithm>
#include <cctype>

namespace cubical {

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
  }
  return names;
}

int parse_suffix_int(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return -1;
  auto rest = name.substr(prefix.size());
  if (rest.empty() || rest.size() > 2) return -1;
  int v = 0;
  for (char ch : rest) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return -1;
    v = 10 * v + (ch - '0');
  }
  return v;
}

// Number of earlier letters in w[0..n) that do not commute with each letter.
std::vector<int> dependency_counts(const DefiningGraph& g, const Word& w) {
  std::vector<int> deps(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!g.commute(w[j], w[i])) ++deps[i];
  return deps;
}

}  // namespace

DefiningGraph::DefiningGraph(std::vector<std::string> names,
                             const std::vector<std::pair<int, int>>& edges)
    : names_(std::move(names)), adj_(names_.size(), 0) {
  if (names_.size() > 64) throw ParseError("at most 64 generators are supported");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ParseError("empty generator name");
    if (!std::islower(static_cast<unsigned char>(names_[i][0])))
      throw ParseError("generator names must start with a lowercase letter: '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw ParseError("duplicate generator '" + names_[i] + "'");
  }
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= size() || b >= size()) throw ParseError("edge endpoint out of range");
    if (a == b) throw ParseError("loop at generator '" + names_[a] + "'");
    adj_[a] |= std::uint64_t{1} << b;
    adj_[b] |= std::uint64_t{1} << a;
  }
}

DefiningGraph DefiningGraph::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators"))
    throw ParseError("graph JSON needs a \"generators\" array");
  std::vector<std::string> names;
  for (const auto& n : j.at("generators")) {
    if (!n.is_string()) throw ParseError("generator names must be strings");
    names.push_back(n.get<std::string>());
  }
  DefiningGraph tmp(names, {});
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair of names");
      int a = tmp.index_of(e[0].get<std::string>());
      int b = tmp.index_of(e[1].get<std::string>());
      if (a < 0 || b < 0) throw ParseError("edge mentions unknown generator in " + e.dump());
      if (tmp.adjacent(a, b)) throw ParseError("duplicate edge " + e.dump());
      edges.emplace_back(a, b);
      tmp.adj_[a] |= std::uint64_t{1} << b;
      tmp.adj_[b] |= std::uint64_t{1} << a;
    }
  }
  return DefiningGraph(std::move(names), edges);
}

DefiningGraph DefiningGraph::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  return from_json(j);
}

DefiningGraph DefiningGraph::named(std::string_view name) {
  if (name == "pentagon") return cycle(5);
  if (name == "F2") return free_group(2);
  if (name == "Z2") return complete(2);
  if (int n = parse_suffix_int(name, "cycle"); n >= 3) return cycle(n);
  if (int n = parse_suffix_int(name, "path"); n >= 1) return path(n);
  if (int n = parse_suffix_int(name, "free"); n >= 1) return free_group(n);
  if (int n = parse_suffix_int(name, "F"); n >= 1) return free_group(n);
  if (int n = parse_suffix_int(name, "complete"); n >= 1) return complete(n);
  if (int n = parse_suffix_int(name, "Z"); n >= 1) return complete(n);
  throw ParseError("unknown graph name '" + std::string(name) + "'");
}

DefiningGraph DefiningGraph::cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return DefiningGraph(default_names(n), e);
}

DefiningGraph DefiningGraph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return DefiningGraph(default_names(n), e);
}

DefiningGraph DefiningGraph::free_group(int n) { return DefiningGraph(default_names(n), {}); }

DefiningGraph DefiningGraph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return DefiningGraph(default_names(n), e);
}

DefiningGraph DefiningGraph::from_edge_mask(int n, std::uint64_t mask) {
  std::vector<std::pair<int, int>> e;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) e.emplace_back(i, j);
  return DefiningGraph(default_names(n), e);
}

int DefiningGraph::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

std::vector<int> DefiningGraph::link(int g) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (adjacent(g, i)) out.push_back(i);
  return out;
}

std::vector<std::pair<int, int>> DefiningGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

bool DefiningGraph::has_edges() const {
  return std::any_of(adj_.begin(), adj_.end(), [](std::uint64_t m) { return m != 0; });
}

nlohmann::json DefiningGraph::to_json() const {
  nlohmann::json j;
  j["generators"] = names_;
  nlohmann::json e = nlohmann::json::array();
  for (auto [a, b] : edges()) e.push_back({names_[a], names_[b]});
  j["edges"] = e;
  return j;
}

Word parse_word(const DefiningGraph& g, std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    int sign = std::isupper(ch) ? -1 : 1;
    int best = -1;
    std::size_t best_len = 0;
    for (int k = 0; k < g.size(); ++k) {
      const std::string& nm = g.name(k);
      if (nm.size() <= best_len || i + nm.size() > text.size()) continue;
      bool match = std::tolower(ch) == nm[0];
      for (std::size_t t = 1; match && t < nm.size(); ++t) match = text[i + t] == nm[t];
      if (match) {
        best = k;
        best_len = nm.size();
      }
    }
    if (best < 0)
      throw ParseError("unknown generator '" + std::string(1, text[i]) + "' at column " +
                       std::to_string(i + 1));
    i += best_len;
    if (text.substr(i, 3) == "^-1") {
      sign = -sign;
      i += 3;
    }
    out.push_back(make_letter(best, sign));
  }
  return out;
}

std::string format_letter(const DefiningGraph& g, Letter c) {
  std::string nm = g.name(letter_gen(c));
  if (letter_sign(c) < 0) {
    if (nm.size() == 1)
      nm[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(nm[0])));
    else
      nm += "^-1";
  }
  return nm;
}

std::string format_word(const DefiningGraph& g, const Word& w) {
  std::string out;
  bool spaced = false;
  for (int i = 0; i < g.size(); ++i) spaced |= g.name(i).size() > 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += format_letter(g, w[i]);
  }
  return out;
}

NormalForm normalize(const DefiningGraph& g, const Word& w) {
  for (Letter c : w)
    if (c < 0 || letter_gen(c) >= g.size())
      throw ParseError("letter code " + std::to_string(c) + " is not a generator of the graph");
  // Free reduction modulo commutation: a new letter cancels against the last
  // occurrence of its generator when everything after it commutes.
  Word r;
  r.reserve(w.size());
  for (Letter c : w) {
    bool cancelled = false;
    for (std::size_t j = r.size(); j-- > 0;) {
      if (letter_gen(r[j]) == letter_gen(c)) {
        if (r[j] == letter_inv(c)) {
          r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
          cancelled = true;
        }
        break;
      }
      if (!g.commute(r[j], c)) break;
    }
    if (!cancelled) r.push_back(c);
  }
  // Lexicographically least linearisation of the trace.
  std::vector<int> deps = dependency_counts(g, r);
  std::vector<char> used(r.size(), 0);
  Word out;
  out.reserve(r.size());
  for (std::size_t step = 0; step < r.size(); ++step) {
    std::size_t pick = r.size();
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!used[i] && deps[i] == 0 && (pick == r.size() || r[i] < r[pick])) pick = i;
    used[pick] = 1;
    out.push_back(r[pick]);
    for (std::size_t k = pick + 1; k < r.size(); ++k)
      if (!used[k] && !g.commute(r[pick], r[k])) --deps[k];
  }
  return out;
}

NormalForm multiply(const DefiningGraph& g, const NormalForm& x, const NormalForm& y) {
  Word w = x;
  w.insert(w.end(), y.begin(), y.end());
  return normalize(g, w);
}

NormalForm invert(const DefiningGraph& g, const NormalForm& x) {
  Word w(x.rbegin(), x.rend());
  for (Letter& c : w) c = letter_inv(c);
  return normalize(g, w);
}

NormalForm power(const DefiningGraph& g, const NormalForm& x, int n) {
  NormalForm base = n < 0 ? invert(g, x) : x;
  Word w;
  for (int i = 0; i < std::abs(n); ++i) w.insert(w.end(), base.begin(), base.end());
  return normalize(g, w);
}

bool equals(const DefiningGraph& g, const Word& x, const Word& y) {
  return normalize(g, x) == normalize(g, y);
}

std::vector<Letter> first_letters(const DefiningGraph& g, const NormalForm& x) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool free = true;
    for (std::size_t j = 0; j < i && free; ++j) free = g.commute(x[j], x[i]);
    if (free) out.push_back(x[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Letter> last_letters(const DefiningGraph& g, const NormalForm& x) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool free = true;
    for (std::size_t j = i + 1; j < x.size() && free; ++j) free = g.commute(x[j], x[i]);
    if (free) out.push_back(x[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_first_letter(const DefiningGraph& g, const NormalForm& x, Letter c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == c) return true;
    if (!g.commute(x[i], c)) return false;
  }
  return false;
}

CyclicDecomposition cyclically_reduce(const DefiningGraph& g, const NormalForm& x) {
  CyclicDecomposition out{{}, x};
  for (;;) {
    auto firsts = first_letters(g, out.core);
    auto lasts = last_letters(g, out.core);
    Letter found = -1;
    for (Letter f : firsts) {
      if (std::binary_search(lasts.begin(), lasts.end(), letter_inv(f))) {
        found = f;
        break;
      }
    }
    if (found < 0) return out;
    out.conjugator = multiply(g, out.conjugator, {found});
    out.core = normalize(g, [&] {
      Word w{letter_inv(found)};
      w.insert(w.end(), out.core.begin(), out.core.end());
      w.push_back(found);
      return w;
    }());
  }
}

int translation_length(const DefiningGraph& g, const NormalForm& x) {
  return static_cast<int>(cyclically_reduce(g, x).core.size());
}

std::pair<NormalForm, NormalForm> strip_prefix(const DefiningGraph& g, const NormalForm& x,
                                               std::uint64_t gens) {
  NormalForm prefix;
  Word rest = x;
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j) free = g.commute(rest[j], rest[i]);
      if (free && ((gens >> letter_gen(rest[i])) & 1U)) {
        prefix.push_back(rest[i]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {normalize(g, prefix), normalize(g, rest)};
}

std::pair<NormalForm, NormalForm> strip_suffix(const DefiningGraph& g, const NormalForm& x,
                                               std::uint64_t gens) {
  Word suffix;
  Word rest = x;
  for (;;) {
    bool moved = false;
    for (std::size_t i = rest.size(); i-- > 0;) {
      bool free = true;
      for (std::size_t j = i + 1; j < rest.size() && free; ++j) free = g.commute(rest[j], rest[i]);
      if (free && ((gens >> letter_gen(rest[i])) & 1U)) {
        suffix.insert(suffix.begin(), rest[i]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {normalize(g, rest), normalize(g, suffix)};
}

bool in_special_subgroup(const NormalForm& x, std::uint64_t gens) {
  return std::all_of(x.begin(), x.end(),
                     [&](Letter c) { return (gens >> letter_gen(c)) & 1U; });
}

}  // namespace cubical
