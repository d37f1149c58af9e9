#include "atomspec/quiver.hpp"

#include <algorithm>
#include <set>

#include "atomspec/errors.hpp"

namespace atomspec {

Quiver Quiver::make(std::vector<std::string> vertices,
                    std::vector<ArrowDecl> arrows) {
  if (vertices.empty()) throw UsageError("quiver needs at least one vertex");
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[i - 1])
      throw UsageError("duplicate vertex identifier \"" + vertices[i] + "\"");
  }
  Quiver q;
  q.vertices_ = std::move(vertices);
  std::set<std::string> seen;
  for (const auto& d : arrows) {
    if (!seen.insert(d.id).second)
      throw UsageError("duplicate arrow identifier \"" + d.id + "\"");
    auto s = q.vertex_index(d.source);
    auto t = q.vertex_index(d.target);
    if (!s) throw UsageError("arrow \"" + d.id + "\" references unknown vertex \"" + d.source + "\"");
    if (!t) throw UsageError("arrow \"" + d.id + "\" references unknown vertex \"" + d.target + "\"");
    q.arrows_.push_back(Arrow{d.id, *s, *t});
  }
  return q;
}

std::optional<int> Quiver::vertex_index(const std::string& token) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), token);
  if (it != vertices_.end() && *it == token)
    return static_cast<int>(it - vertices_.begin());
  return std::nullopt;
}

std::optional<int> Quiver::arrow_index(const std::string& id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<int> Quiver::out_arrows(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].source == v) out.push_back(static_cast<int>(i));
  return out;
}

Path Quiver::trivial_path(int v) const {
  if (v < 0 || v >= vertex_count()) throw UsageError("vertex index out of range");
  return Path{v, v, {}};
}

Path Quiver::arrow_path(int a) const {
  if (a < 0 || a >= arrow_count()) throw UsageError("arrow index out of range");
  return Path{arrows_[a].source, arrows_[a].target, {a}};
}

Path Quiver::path_from_ids(const std::vector<std::string>& ids) const {
  if (ids.empty()) throw UsageError("path_from_ids needs at least one arrow");
  Path p;
  for (const auto& id : ids) {
    auto a = arrow_index(id);
    if (!a) throw UsageError("unknown arrow \"" + id + "\"");
    if (p.arrows.empty()) {
      p = arrow_path(*a);
    } else {
      if (arrows_[*a].source != p.target)
        throw UsageError("arrow sequence does not compose at \"" + id + "\"");
      p.arrows.push_back(*a);
      p.target = arrows_[*a].target;
    }
  }
  return p;
}

int Quiver::vertex_at(const Path& p, int k) const {
  if (k < 0 || k > p.length()) throw UsageError("path position out of range");
  if (k == 0) return p.source;
  return arrows_[p.arrows[k - 1]].target;
}

std::string Quiver::path_string(const Path& p) const {
  if (p.trivial()) return "e_" + vertices_[p.source];
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += "*";
    out += arrows_[*it].id;
  }
  return out;
}

std::uint64_t Quiver::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& v : vertices_) mix(v);
  for (const auto& a : arrows_) {
    mix(a.id);
    mix(vertices_[a.source]);
    mix(vertices_[a.target]);
  }
  return h;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertices_ != b.vertices_) return false;
  if (a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow& x = a.arrows_[i];
    const Arrow& y = b.arrows_[i];
    if (x.id != y.id || x.source != y.source || x.target != y.target)
      return false;
  }
  return true;
}

std::optional<Path> try_compose(const Quiver& q, const Path& p,
                                const Path& r) {
  (void)q;
  if (r.target != p.source) return std::nullopt;
  Path out;
  out.source = r.source;
  out.target = p.target;
  out.arrows = r.arrows;
  out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
  return out;
}

Path compose(const Quiver& q, const Path& p, const Path& r) {
  auto out = try_compose(q, p, r);
  if (!out)
    throw UsageError("paths do not compose: " + q.path_string(p) + " after " +
                     q.path_string(r) + " (target " + q.vertex(r.target) +
                     " != source " + q.vertex(p.source) + ")");
  return *out;
}

namespace {

// Order used within one length class: the arrow-id sequence, which for
// trivial paths degenerates to the vertex token (vertices are sorted, so
// index order suffices there).
bool id_seq_less(const Quiver& q, const Path& a, const Path& b) {
  for (std::size_t i = 0; i < a.arrows.size() && i < b.arrows.size(); ++i) {
    const std::string& x = q.arrow(a.arrows[i]).id;
    const std::string& y = q.arrow(b.arrows[i]).id;
    if (x != y) return x < y;
  }
  if (a.arrows.size() != b.arrows.size())
    return a.arrows.size() < b.arrows.size();
  return a.source < b.source;
}

}  // namespace

std::vector<Path> paths_of_length(const Quiver& q, int len) {
  if (len < 0) throw UsageError("path length must be >= 0");
  std::vector<Path> cur;
  if (len == 0) {
    for (int v = 0; v < q.vertex_count(); ++v) cur.push_back(q.trivial_path(v));
    return cur;
  }
  for (int v = 0; v < q.vertex_count(); ++v) cur.push_back(q.trivial_path(v));
  for (int step = 0; step < len; ++step) {
    std::vector<Path> next;
    for (const Path& p : cur) {
      for (int a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != p.target) continue;
        Path e = p;
        e.arrows.push_back(a);
        e.target = q.arrow(a).target;
        next.push_back(std::move(e));
      }
    }
    cur = std::move(next);
    if (cur.empty()) return cur;
  }
  std::sort(cur.begin(), cur.end(),
            [&q](const Path& a, const Path& b) { return id_seq_less(q, a, b); });
  return cur;
}

std::vector<Path> enumerate_paths(const Quiver& q, int max_len) {
  if (max_len < 0) throw UsageError("max_len must be >= 0");
  std::vector<Path> out;
  for (int len = 0; len <= max_len; ++len) {
    auto layer = paths_of_length(q, len);
    if (layer.empty() && len > 0) break;
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

bool is_acyclic(const Quiver& q) {
  enum { White, Grey, Black };
  std::vector<int> color(q.vertex_count(), White);
  std::vector<std::vector<int>> succ(q.vertex_count());
  for (const Arrow& a : q.arrows()) succ[a.source].push_back(a.target);
  for (int root = 0; root < q.vertex_count(); ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        int w = succ[v][i++];
        if (color[w] == Grey) return false;
        if (color[w] == White) {
          color[w] = Grey;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = Black;
        stack.pop_back();
      }
    }
  }
  return true;
}

Quiver make_jordan_quiver() {
  return Quiver::make({"v"}, {{"x", "v", "v"}});
}

Quiver make_loop_quiver(int nloops) {
  if (nloops < 1) throw UsageError("loop quiver needs at least one loop");
  std::vector<ArrowDecl> arrows;
  for (int i = 1; i <= nloops; ++i)
    arrows.push_back({"x" + std::to_string(i), "v", "v"});
  return Quiver::make({"v"}, std::move(arrows));
}

Quiver make_subspace_quiver(int n) {
  if (n < 2) throw UsageError("subspace quiver needs n >= 2");
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<ArrowDecl> arrows;
  for (int i = 1; i < n; ++i)
    arrows.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(n)});
  return Quiver::make(std::move(vertices), std::move(arrows));
}

Quiver make_chain_quiver(int n) {
  if (n < 2) throw UsageError("chain quiver needs n >= 2");
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<ArrowDecl> arrows;
  for (int i = 1; i < n; ++i)
    arrows.push_back({"d" + std::to_string(i), std::to_string(i + 1), std::to_string(i)});
  return Quiver::make(std::move(vertices), std::move(arrows));
}

Quiver make_kronecker_quiver() {
  return Quiver::make({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
}

}  // namespace atomspec
