#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atomspec {

// A path in a fixed quiver: the trivial path at a vertex, or a nonempty
// composable arrow sequence stored in application order (first arrow
// first).  Display reverses the storage so a path reads a_n*...*a_1.
struct Path {
  int source = -1;
  int target = -1;
  std::vector<int> arrows;

  bool trivial() const { return arrows.empty(); }
  int length() const { return static_cast<int>(arrows.size()); }

  friend bool operator==(const Path&, const Path&) = default;

  // Length-first order, ties broken by the arrow index sequence (arrow
  // indices follow declaration order) and the base vertex for trivial
  // paths.  Total on the paths of one quiver and degree-compatible, so it
  // doubles as the rewriting order of the path algebra.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    return a.source <=> b.source;
  }
};

struct Arrow {
  std::string id;
  int source = -1;
  int target = -1;
};

struct ArrowDecl {
  std::string id;
  std::string source;
  std::string target;
};

// Finite directed multigraph.  Vertices are stored sorted by token (the
// canonical order, fixed at construction); arrows keep declaration order
// since the term order of the path algebra depends on it.
class Quiver {
 public:
  Quiver() = default;

  // Validates: nonempty vertex set, distinct vertex tokens, distinct arrow
  // ids, arrow endpoints present among the vertices.
  static Quiver make(std::vector<std::string> vertices,
                     std::vector<ArrowDecl> arrows);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex(int v) const { return vertices_[v]; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::optional<int> vertex_index(const std::string& token) const;
  std::optional<int> arrow_index(const std::string& id) const;

  // Arrow indices leaving v, in declaration order.
  std::vector<int> out_arrows(int v) const;

  Path trivial_path(int v) const;
  Path arrow_path(int a) const;
  // Builds a path from ids listed in application order (first arrow
  // first); throws UsageError when the sequence does not compose.
  Path path_from_ids(const std::vector<std::string>& ids) const;

  // Vertex the path sits at after its first k arrows (k = 0 gives the
  // source, k = length the target).
  int vertex_at(const Path& p, int k) const;

  // Display form: "e_v" for trivial paths, "c*b*a" for composites.
  std::string path_string(const Path& p) const;

  // Structural hash binding algebra elements to their quiver.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Quiver& a, const Quiver& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// pq means "first q, then p"; defined iff target(q) == source(p).
// Throws UsageError when the paths do not compose.
Path compose(const Quiver& q, const Path& p, const Path& r);
std::optional<Path> try_compose(const Quiver& q, const Path& p,
                                const Path& r);

// All paths of length <= max_len, ordered by (length, arrow-id sequence);
// trivial paths come first, in vertex order.  Output may be large; the
// caller bounds max_len.
std::vector<Path> enumerate_paths(const Quiver& q, int max_len);

// Paths of length exactly len, same per-length order as enumerate_paths.
std::vector<Path> paths_of_length(const Quiver& q, int len);

// True iff the quiver has no directed cycle (a loop is a cycle).
bool is_acyclic(const Quiver& q);

// Stock quivers used throughout the tests and the CLI examples.
Quiver make_jordan_quiver();                 // one vertex "v", loop "x"
Quiver make_loop_quiver(int nloops);         // one vertex, loops x1..xn
Quiver make_subspace_quiver(int n);          // 1..n-1 each -> n
Quiver make_chain_quiver(int n);             // d1: 2->1, ..., d(n-1): n->n-1
Quiver make_kronecker_quiver();              // a, b: 1 -> 2

}  // namespace atomspec
