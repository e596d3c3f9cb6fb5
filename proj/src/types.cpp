#include "codiff/types.hpp"

#include <algorithm>
#include <cmath>

namespace codiff {

double AugVector::norm() const { return std::sqrt(squaredNorm()); }

bool AugVector::allFinite() const { return std::isfinite(a) && v.allFinite(); }

VertexSet::VertexSet(std::vector<AugVector> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidArgument("VertexSet: needs at least one vertex");
  dim_ = vertices_.front().dim();
  if (dim_ < 1) throw InvalidArgument("VertexSet: dimension must be at least 1");
  for (const auto& p : vertices_) {
    if (p.dim() != dim_) throw DimensionMismatch("VertexSet: vertices of mixed dimension");
  }
}

double VertexSet::maxA() const {
  double m = vertices_.front().a;
  for (const auto& p : vertices_) m = std::max(m, p.a);
  return m;
}

double VertexSet::minA() const {
  double m = vertices_.front().a;
  for (const auto& p : vertices_) m = std::min(m, p.a);
  return m;
}

VertexSet VertexSet::translated(const AugVector& offset) const {
  std::vector<AugVector> out;
  out.reserve(vertices_.size());
  for (const auto& p : vertices_) out.push_back(p + offset);
  return VertexSet(std::move(out));
}

void requireDim(const Vector& x, int d, const char* what) {
  if (x.size() != d) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(d) +
                            ", got " + std::to_string(x.size()));
  }
}

}  // namespace codiff
