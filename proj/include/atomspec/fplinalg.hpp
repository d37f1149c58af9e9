#pragma once

// Dense linear algebra over a prime field F_p with small p.  Everything is
// exact integer arithmetic on values in [0, p).  Matrices act on column
// vectors; Subspace stores the canonical reduced row echelon basis of its
// row span, so equality of subspaces is equality of the stored rows.

#include <compare>
#include <optional>
#include <vector>

namespace atomspec::fp {

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<int> a;  // row-major

  static Mat zero(int r, int c);
  static Mat identity(int n);

  int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  int at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  bool is_zero() const;

  friend bool operator==(const Mat&, const Mat&) = default;
};

int norm_mod(long long v, int p);
int inv_mod(int v, int p);

Mat mat_mul(const Mat& A, const Mat& B, int p);
Mat mat_sub(const Mat& A, const Mat& B, int p);
Mat vstack(const Mat& A, const Mat& B);
std::vector<int> mat_vec(const Mat& A, const std::vector<int>& v, int p);

// Reduces M to reduced row echelon form in place, returns the rank.
int rref_in_place(Mat& M, int p);
int rank(Mat M, int p);
bool is_invertible(const Mat& M, int p);

// Basis of the right kernel {v : Mv = 0}; each vector has length M.cols.
std::vector<std::vector<int>> kernel_basis(const Mat& M, int p);

// One solution of Ax = b, if any.
std::optional<std::vector<int>> solve(const Mat& A, const std::vector<int>& b,
                                      int p);

class Subspace {
 public:
  Subspace() = default;
  Subspace(int ambient_dim, int p);  // the zero subspace
  static Subspace span(const std::vector<std::vector<int>>& vectors,
                       int ambient_dim, int p);
  static Subspace full(int ambient_dim, int p);

  int ambient() const { return ambient_; }
  int prime() const { return p_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // v with its components along the basis rows eliminated; the result is
  // zero exactly when v lies in the subspace, and is supported on the
  // non-pivot coordinates otherwise.
  std::vector<int> reduce(const std::vector<int>& v) const;
  bool contains(const std::vector<int>& v) const;
  bool contains(const Subspace& other) const;
  // Coefficients expressing v in the basis rows, if v lies in the span.
  std::optional<std::vector<int>> coordinates(const std::vector<int>& v) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace&,
                                          const Subspace&) = default;

 private:
  int ambient_ = 0;
  int p_ = 2;
  std::vector<std::vector<int>> rows_;  // canonical RREF basis
  std::vector<int> pivots_;
};

// Number of subspaces of F_p^n, clamped to LLONG_MAX on overflow.
long long count_subspaces(int n, int p);

// All subspaces of F_p^n.  Throws ResourceError when there are more than
// `limit`.
std::vector<Subspace> all_subspaces(int n, int p, long long limit);

}  // namespace atomspec::fp
