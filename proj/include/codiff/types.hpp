#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace codiff {

using Vector = Eigen::VectorXd;

/// A point (a, v) of R x R^d. Used for hypogradients (a_i, v_i) as well as
/// hypergradients (b_j, w_j); the squared norm is a^2 + |v|^2.
struct AugVector {
  double a = 0.0;
  Vector v;

  AugVector() = default;
  AugVector(double a_, Vector v_) : a(a_), v(std::move(v_)) {}

  int dim() const { return static_cast<int>(v.size()); }
  double squaredNorm() const { return a * a + v.squaredNorm(); }
  double norm() const;
  double dot(const AugVector& other) const { return a * other.a + v.dot(other.v); }
  bool allFinite() const;

  AugVector operator+(const AugVector& o) const { return {a + o.a, v + o.v}; }
  AugVector operator-(const AugVector& o) const { return {a - o.a, v - o.v}; }
  AugVector operator-() const { return {-a, -v}; }
  AugVector operator*(double s) const { return {s * a, s * v}; }
};

inline AugVector operator*(double s, const AugVector& x) { return x * s; }

/// Finite ordered list of points whose convex hull is a hypo- or
/// hyperdifferential. Order is significant: downstream tie-breaking uses it.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<AugVector> vertices);

  int dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const AugVector& operator[](std::size_t i) const { return vertices_[i]; }
  const std::vector<AugVector>& vertices() const { return vertices_; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }

  double maxA() const;
  double minA() const;

  /// Every vertex shifted by `offset`.
  VertexSet translated(const AugVector& offset) const;

 private:
  std::vector<AugVector> vertices_;
  int dim_ = 0;
};

// Error hierarchy. Every failure the library reports derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class Degenerate : public Error {
 public:
  using Error::Error;
};

class ArmijoFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

void requireDim(const Vector& x, int d, const char* what);

}  // namespace codiff
