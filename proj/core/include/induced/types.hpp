#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "induced/errors.hpp"
#include "induced/vec.hpp"

namespace induced {

// n points in R^d with dense ids 0..n-1, row-major storage.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ <= 0 || coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw DimensionMismatch("PointSet: coordinate buffer size not a multiple of dim");
  }

  static PointSet fromRows(int dim, const std::vector<Vec>& rows) {
    std::vector<double> buf;
    buf.reserve(rows.size() * static_cast<std::size_t>(dim));
    for (const Vec& r : rows) {
      if (static_cast<int>(r.size()) != dim)
        throw DimensionMismatch("PointSet::fromRows: row length mismatch");
      buf.insert(buf.end(), r.begin(), r.end());
    }
    return PointSet(dim, std::move(buf));
  }

  int dim() const { return dim_; }
  int size() const { return dim_ ? static_cast<int>(coords_.size()) / dim_ : 0; }

  std::span<const double> operator[](int id) const {
    return {coords_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  Vec row(int id) const {
    auto s = (*this)[id];
    return Vec(s.begin(), s.end());
  }

  void push(std::span<const double> p) {
    if (static_cast<int>(p.size()) != dim_)
      throw DimensionMismatch("PointSet::push: point length mismatch");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  const std::vector<double>& raw() const { return coords_; }

  // Largest coordinate magnitude; 1 when the set is empty or all-zero.
  // Used as the reference scale for relative tolerances.
  double scale() const {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m > 0.0 ? m : 1.0;
  }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

enum class SubsetKind { Affine, Convex, Linear };

// A sorted set of point ids together with the hull interpretation.
// For Linear the origin is an implicit extra vertex of the flat.
struct IndexSubset {
  std::vector<int> indices;  // strictly increasing
  SubsetKind kind = SubsetKind::Affine;

  bool operator==(const IndexSubset& o) const {
    return indices == o.indices && kind == o.kind;
  }
  bool operator<(const IndexSubset& o) const { return indices < o.indices; }
};

// base + span(basis); basis vectors are orthonormal.
struct AffineFlat {
  Vec base;
  std::vector<Vec> basis;
  IndexSubset source;

  int flatDim() const { return static_cast<int>(basis.size()); }
  int ambientDim() const { return static_cast<int>(base.size()); }
};

// All floating-point policy in one place.  `tolerance` is relative,
// `perturbation` is the relative magnitude of the opt-in input jitter.
struct NumericPolicy {
  double tolerance = 1e-9;
  double perturbation = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace induced
