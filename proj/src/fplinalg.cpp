#include "atomspec/fplinalg.hpp"

#include <algorithm>
#include <climits>

#include "atomspec/errors.hpp"

namespace atomspec::fp {

Mat Mat::zero(int r, int c) {
  Mat m;
  m.rows = r;
  m.cols = c;
  m.a.assign(static_cast<std::size_t>(r) * c, 0);
  return m;
}

Mat Mat::identity(int n) {
  Mat m = zero(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

int norm_mod(long long v, int p) {
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

int inv_mod(int v, int p) {
  v = norm_mod(v, p);
  if (v == 0) throw UsageError("division by zero in F_p");
  int r = 1;
  for (int e = p - 2; e > 0; e >>= 1) {  // v^(p-2) by Fermat
    if (e & 1) r = norm_mod(static_cast<long long>(r) * v, p);
    v = norm_mod(static_cast<long long>(v) * v, p);
  }
  return r;
}

Mat mat_mul(const Mat& A, const Mat& B, int p) {
  if (A.cols != B.rows) throw UsageError("matrix shape mismatch in product");
  Mat C = Mat::zero(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) =
            norm_mod(C.at(i, j) + static_cast<long long>(aik) * B.at(k, j), p);
    }
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B, int p) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw UsageError("matrix shape mismatch in difference");
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i)
    C.a[i] = norm_mod(C.a[i] - B.a[i], p);
  return C;
}

Mat vstack(const Mat& A, const Mat& B) {
  if (A.cols != B.cols) throw UsageError("matrix width mismatch in vstack");
  Mat C = Mat::zero(A.rows + B.rows, A.cols);
  std::copy(A.a.begin(), A.a.end(), C.a.begin());
  std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
  return C;
}

std::vector<int> mat_vec(const Mat& A, const std::vector<int>& v, int p) {
  if (A.cols != static_cast<int>(v.size()))
    throw UsageError("matrix shape mismatch in matrix-vector product");
  std::vector<int> out(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    long long acc = 0;
    for (int j = 0; j < A.cols; ++j)
      acc += static_cast<long long>(A.at(i, j)) * v[j];
    out[i] = norm_mod(acc, p);
  }
  return out;
}

int rref_in_place(Mat& M, int p) {
  int rank = 0;
  for (int col = 0; col < M.cols && rank < M.rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < M.rows; ++r)
      if (M.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < M.cols; ++j) std::swap(M.at(rank, j), M.at(pivot, j));
    int inv = inv_mod(M.at(rank, col), p);
    for (int j = 0; j < M.cols; ++j)
      M.at(rank, j) = norm_mod(static_cast<long long>(M.at(rank, j)) * inv, p);
    for (int r = 0; r < M.rows; ++r) {
      if (r == rank || M.at(r, col) == 0) continue;
      long long f = M.at(r, col);
      for (int j = 0; j < M.cols; ++j)
        M.at(r, j) =
            norm_mod(M.at(r, j) - f * M.at(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

int rank(Mat M, int p) { return rref_in_place(M, p); }

bool is_invertible(const Mat& M, int p) {
  return M.rows == M.cols && rank(M, p) == M.rows;
}

std::vector<std::vector<int>> kernel_basis(const Mat& M, int p) {
  Mat R = M;
  int rk = rref_in_place(R, p);
  std::vector<int> pivot_of_col(R.cols, -1);
  std::vector<int> pivots;
  for (int r = 0; r < rk; ++r) {
    int c = 0;
    while (c < R.cols && R.at(r, c) == 0) ++c;
    pivot_of_col[c] = r;
    pivots.push_back(c);
  }
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < R.cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<int> v(R.cols, 0);
    v[free] = 1;
    for (int c : pivots) v[c] = norm_mod(-R.at(pivot_of_col[c], free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<int>> solve(const Mat& A, const std::vector<int>& b,
                                      int p) {
  if (A.rows != static_cast<int>(b.size()))
    throw UsageError("matrix shape mismatch in solve");
  Mat Ab = Mat::zero(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) Ab.at(i, j) = A.at(i, j);
    Ab.at(i, A.cols) = norm_mod(b[i], p);
  }
  rref_in_place(Ab, p);
  std::vector<int> x(A.cols, 0);
  for (int r = 0; r < Ab.rows; ++r) {
    int c = 0;
    while (c < Ab.cols && Ab.at(r, c) == 0) ++c;
    if (c == Ab.cols) continue;       // zero row
    if (c == A.cols) return std::nullopt;  // 0 = 1
    x[c] = Ab.at(r, A.cols);
  }
  return x;
}

Subspace::Subspace(int ambient_dim, int p) : ambient_(ambient_dim), p_(p) {}

Subspace Subspace::span(const std::vector<std::vector<int>>& vectors,
                        int ambient_dim, int p) {
  Subspace s(ambient_dim, p);
  if (vectors.empty()) return s;
  Mat M = Mat::zero(static_cast<int>(vectors.size()), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(vectors[i].size()) != ambient_dim)
      throw UsageError("vector length mismatch in span");
    for (int j = 0; j < ambient_dim; ++j)
      M.at(static_cast<int>(i), j) = norm_mod(vectors[i][j], p);
  }
  int rk = rref_in_place(M, p);
  for (int r = 0; r < rk; ++r) {
    std::vector<int> row(ambient_dim);
    for (int j = 0; j < ambient_dim; ++j) row[j] = M.at(r, j);
    int c = 0;
    while (row[c] == 0) ++c;
    s.pivots_.push_back(c);
    s.rows_.push_back(std::move(row));
  }
  return s;
}

Subspace Subspace::full(int ambient_dim, int p) {
  std::vector<std::vector<int>> id;
  for (int i = 0; i < ambient_dim; ++i) {
    std::vector<int> v(ambient_dim, 0);
    v[i] = 1;
    id.push_back(std::move(v));
  }
  return span(id, ambient_dim, p);
}

std::vector<int> Subspace::reduce(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw UsageError("vector length mismatch in subspace reduce");
  std::vector<int> w(v);
  for (int& x : w) x = norm_mod(x, p_);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    long long f = w[pivots_[k]];
    if (f == 0) continue;
    for (int j = 0; j < ambient_; ++j)
      w[j] = norm_mod(w[j] - f * rows_[k][j], p_);
  }
  return w;
}

bool Subspace::contains(const std::vector<int>& v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

std::optional<std::vector<int>> Subspace::coordinates(
    const std::vector<int>& v) const {
  if (!contains(v)) return std::nullopt;
  std::vector<int> c(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k)
    c[k] = norm_mod(v[pivots_[k]], p_);
  return c;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_ || p_ != other.p_)
    throw UsageError("subspace ambient mismatch in sum");
  std::vector<std::vector<int>> vecs = rows_;
  vecs.insert(vecs.end(), other.rows_.begin(), other.rows_.end());
  return span(vecs, ambient_, p_);
}

long long count_subspaces(int n, int p) {
  // Sum over pivot-column subsets of p^(number of free cells).  A shape with
  // pivot columns c_1 < ... < c_k has, in row i, free cells at the columns
  // right of c_i that are not pivots.
  if (n < 0) throw UsageError("negative dimension");
  long long total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int free_cells = 0;
    int seen_pivots = 0;
    for (int c = 0; c < n; ++c) {
      if (mask & (1u << c))
        ++seen_pivots;
      else
        free_cells += seen_pivots;  // rows of all pivots left of c reach c
    }
    unsigned long long term = 1;
    bool over = false;
    for (int i = 0; i < free_cells; ++i) {
      if (term > static_cast<unsigned long long>(LLONG_MAX) / p) {
        over = true;
        break;
      }
      term *= static_cast<unsigned>(p);
    }
    if (over || total > LLONG_MAX - static_cast<long long>(term))
      return LLONG_MAX;
    total += static_cast<long long>(term);
  }
  return total;
}

std::vector<Subspace> all_subspaces(int n, int p, long long limit) {
  if (n < 0) throw UsageError("negative dimension");
  if (n > 30) throw ResourceError("subspace enumeration dimension", n, 30);
  long long count = count_subspaces(n, p);
  if (count > limit) throw ResourceError("subspace enumeration", count, limit);
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(count));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> pivots;
    for (int c = 0; c < n; ++c)
      if (mask & (1u << c)) pivots.push_back(c);
    int k = static_cast<int>(pivots.size());
    // Free cells: (row i, column c) with c > pivots[i], c not a pivot.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
      for (int c = pivots[i] + 1; c < n; ++c)
        if (!(mask & (1u << c))) cells.emplace_back(i, c);
    std::vector<int> fill(cells.size(), 0);
    while (true) {
      std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
      for (int i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
      for (std::size_t t = 0; t < cells.size(); ++t)
        rows[cells[t].first][cells[t].second] = fill[t];
      out.push_back(Subspace::span(rows, n, p));
      // odometer
      std::size_t t = 0;
      while (t < fill.size() && fill[t] == p - 1) fill[t++] = 0;
      if (t == fill.size()) break;
      ++fill[t];
    }
  }
  return out;
}

}  // namespace atomspec::fp
