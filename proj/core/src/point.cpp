#include "drp/point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drp {

Point::Point(std::vector<double> values)
    : dim_(static_cast<int>(values.size())), sparse_(false), dense_(std::move(values)) {}

Point Point::zeros(int dim) {
  if (dim < 0) throw std::invalid_argument("Point: negative dimension");
  Point p;
  p.dim_ = dim;
  p.sparse_ = true;  // empty support
  return p;
}

Point Point::sparse(int dim, std::vector<int> indices, std::vector<double> values) {
  if (dim < 0) throw std::invalid_argument("Point: negative dimension");
  if (indices.size() != values.size())
    throw std::invalid_argument("Point::sparse: index/value length mismatch");
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= dim)
      throw std::invalid_argument("Point::sparse: index out of range");
    if (t > 0 && indices[t] <= indices[t - 1])
      throw std::invalid_argument("Point::sparse: indices must be strictly increasing");
  }
  Point p;
  p.dim_ = dim;
  p.sparse_ = true;
  p.idx_ = std::move(indices);
  p.val_ = std::move(values);
  return p;
}

Point Point::unit(int dim, int index, double value) {
  return sparse(dim, {index}, {value});
}

double Point::at(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("Point::at: index out of range");
  if (!sparse_) return dense_[i];
  auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
  if (it != idx_.end() && *it == i) return val_[it - idx_.begin()];
  return 0.0;
}

std::vector<double> Point::to_dense_vector() const {
  if (!sparse_) return dense_;
  std::vector<double> out(dim_, 0.0);
  for (std::size_t t = 0; t < idx_.size(); ++t) out[idx_[t]] = val_[t];
  return out;
}

Point& Point::densify() {
  if (sparse_) {
    dense_ = to_dense_vector();
    idx_.clear();
    val_.clear();
    sparse_ = false;
  }
  return *this;
}

void Point::check_same_dim(const Point& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("Point: dimension mismatch");
}

Point& Point::add_scaled(const Point& p, double s) {
  check_same_dim(p);
  if (s == 0.0) return *this;
  if (!sparse_) {
    p.for_each_nonzero([&](int i, double v) { dense_[i] += s * v; });
    return *this;
  }
  if (p.sparse_) {
    // merge supports
    std::vector<int> idx;
    std::vector<double> val;
    idx.reserve(idx_.size() + p.idx_.size());
    val.reserve(idx_.size() + p.idx_.size());
    std::size_t a = 0, b = 0;
    while (a < idx_.size() || b < p.idx_.size()) {
      int ia = a < idx_.size() ? idx_[a] : dim_;
      int ib = b < p.idx_.size() ? p.idx_[b] : dim_;
      if (ia < ib) {
        idx.push_back(ia);
        val.push_back(val_[a]);
        ++a;
      } else if (ib < ia) {
        idx.push_back(ib);
        val.push_back(s * p.val_[b]);
        ++b;
      } else {
        idx.push_back(ia);
        val.push_back(val_[a] + s * p.val_[b]);
        ++a;
        ++b;
      }
    }
    idx_ = std::move(idx);
    val_ = std::move(val);
    return *this;
  }
  // sparse += dense promotes
  densify();
  return add_scaled(p, s);
}

Point& Point::scale(double s) {
  if (sparse_) {
    for (double& v : val_) v *= s;
  } else {
    for (double& v : dense_) v *= s;
  }
  return *this;
}

void Point::set(int i, double value) {
  if (i < 0 || i >= dim_) throw std::out_of_range("Point::set: index out of range");
  if (!sparse_) {
    dense_[i] = value;
    return;
  }
  auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
  if (it != idx_.end() && *it == i) {
    val_[it - idx_.begin()] = value;
  } else {
    auto pos = it - idx_.begin();
    idx_.insert(it, i);
    val_.insert(val_.begin() + pos, value);
  }
}

double Point::norm_sq() const {
  double s = 0.0;
  if (sparse_) {
    for (double v : val_) s += v * v;
  } else {
    for (double v : dense_) s += v * v;
  }
  return s;
}

double Point::norm() const { return std::sqrt(norm_sq()); }

bool Point::operator==(const Point& rhs) const {
  if (dim_ != rhs.dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (at(i) != rhs.at(i)) return false;
  return true;
}

Point operator+(const Point& a, const Point& b) {
  Point out = a;
  out.add_scaled(b, 1.0);
  return out;
}

Point operator-(const Point& a, const Point& b) {
  Point out = a;
  out.add_scaled(b, -1.0);
  return out;
}

Point operator*(double s, const Point& p) {
  Point out = p;
  out.scale(s);
  return out;
}

double dot(const Point& a, const Point& b) {
  a.check_same_dim(b);
  double s = 0.0;
  if (a.sparse_ && b.sparse_) {
    std::size_t ia = 0, ib = 0;
    while (ia < a.idx_.size() && ib < b.idx_.size()) {
      if (a.idx_[ia] < b.idx_[ib]) {
        ++ia;
      } else if (b.idx_[ib] < a.idx_[ia]) {
        ++ib;
      } else {
        s += a.val_[ia] * b.val_[ib];
        ++ia;
        ++ib;
      }
    }
    return s;
  }
  if (a.sparse_) {
    a.for_each_nonzero([&](int i, double v) { s += v * b.at(i); });
    return s;
  }
  b.for_each_nonzero([&](int i, double v) { s += v * a.dense_[i]; });
  return s;
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

bool approx_equal(const Point& a, const Point& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return distance(a, b) <= tol;
}

}  // namespace drp
