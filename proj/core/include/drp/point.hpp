#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace drp {

// A vector in R^d with either dense or index/value sparse storage.
// The dimension is fixed at construction; all arithmetic rejects
// mismatched dimensions. Both representations describe the same
// mathematical vector and compare equal entry by entry.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> values);

  static Point zeros(int dim);
  // entries: strictly increasing indices in [0, dim).
  static Point sparse(int dim, std::vector<int> indices, std::vector<double> values);
  static Point unit(int dim, int index, double value = 1.0);

  int dim() const { return dim_; }
  bool is_sparse() const { return sparse_; }
  // number of stored entries (dense points store all of them)
  int nnz() const { return sparse_ ? static_cast<int>(idx_.size()) : dim_; }

  double at(int i) const;
  double operator[](int i) const { return at(i); }

  std::vector<double> to_dense_vector() const;
  Point& densify();

  // this += s * p; keeps dense storage dense, touches only p's support.
  Point& add_scaled(const Point& p, double s);
  Point& scale(double s);
  // overwrite coordinate i (densifies a sparse point if i is off-support)
  void set(int i, double value);

  double norm_sq() const;
  double norm() const;

  bool operator==(const Point& rhs) const;

  template <class F>
  void for_each_nonzero(F&& f) const {
    if (sparse_) {
      for (std::size_t t = 0; t < idx_.size(); ++t) f(idx_[t], val_[t]);
    } else {
      for (int i = 0; i < dim_; ++i)
        if (dense_[i] != 0.0) f(i, dense_[i]);
    }
  }

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& p);
  friend double dot(const Point& a, const Point& b);

 private:
  int dim_ = 0;
  bool sparse_ = false;
  std::vector<double> dense_;
  std::vector<int> idx_;    // sorted, strictly increasing
  std::vector<double> val_;

  void check_same_dim(const Point& other) const;
};

double dot(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
bool approx_equal(const Point& a, const Point& b, double tol);

}  // namespace drp
