#pragma once

// Domain types shared by every module. All of them are immutable once
// built and safe to share between worker threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wsa {

/// Ordered positive exponents with an independent/dependent split.
///
/// Entries [0, split) are the independent exponents tau_1..tau_d and must be
/// non-increasing; entries [split, size) are the dependent exponents. A
/// manifold-free vector has split == size.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::vector<double> entries, std::size_t split);

  /// All entries independent (split == size).
  static WeightVector plain(std::vector<double> entries);
  /// All entries dependent (split == 0); used for the dependent block alone.
  static WeightVector dependent_only(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t split() const noexcept { return split_; }
  double operator[](std::size_t i) const { return entries_[i]; }

  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> independent() const noexcept {
    return std::span<const double>(entries_).first(split_);
  }
  std::span<const double> dependent() const noexcept {
    return std::span<const double>(entries_).subspan(split_);
  }

  /// m * tilde-tau, i.e. the sum of the dependent exponents.
  double dependent_sum() const noexcept;

 private:
  std::vector<double> entries_;
  std::size_t split_ = 0;
};

/// Closed axis-aligned box standing in for the chart domain U.
class DomainBox {
 public:
  DomainBox() = default;
  DomainBox(std::vector<double> lower, std::vector<double> upper);

  static DomainBox unit(std::size_t dim);

  std::size_t dim() const noexcept { return lower_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  double width(std::size_t i) const { return upper_[i] - lower_[i]; }

  bool contains(std::span<const double> x) const;
  bool contains_interior(std::span<const double> x) const;
  /// min over axes of the distance from x to the two faces; negative outside.
  double boundary_distance(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Integer vector p with denominator q >= 1, kept exactly as given.
struct RationalPoint {
  std::vector<std::int64_t> p;
  std::int64_t q = 1;

  RationalPoint() = default;
  RationalPoint(std::vector<std::int64_t> numerators, std::int64_t denominator);

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Emission order: by q, then lexicographically by p.
bool emission_less(const RationalPoint& a, const RationalPoint& b);

/// Open box {x : |x_i - center_i| < half_width_i for every i}.
struct Hyperrectangle {
  std::vector<double> center;
  std::vector<double> half_widths;

  Hyperrectangle() = default;
  Hyperrectangle(std::vector<double> c, std::vector<double> hw);

  std::size_t dim() const noexcept { return center.size(); }
  bool contains(std::span<const double> x) const;
};

/// Flat storage for large rectangle families (one allocation per field).
class RectSet {
 public:
  RectSet() = default;
  explicit RectSet(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : centers_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }

  void reserve(std::size_t count);
  void push_back(std::span<const double> center,
                 std::span<const double> half_widths);
  void push_back(const Hyperrectangle& rect);
  void append(const RectSet& other);

  std::span<const double> center(std::size_t i) const {
    return {centers_.data() + i * dim_, dim_};
  }
  std::span<const double> half_widths(std::size_t i) const {
    return {half_widths_.data() + i * dim_, dim_};
  }
  Hyperrectangle at(std::size_t i) const;

  /// Copy with every half-width multiplied by `factor`.
  RectSet scaled(double factor) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> centers_;
  std::vector<double> half_widths_;
};

/// The B^a dilation of the ball B(center, radius): half-widths radius^{a_i}.
Hyperrectangle dilate(std::span<const double> ball_center, double radius,
                      const WeightVector& a);

/// True iff the open rectangle meets the closed box.
bool rect_intersects_box(const Hyperrectangle& rect, const DomainBox& box);
bool rect_intersects_box(std::span<const double> center,
                         std::span<const double> half_widths,
                         const DomainBox& box);

}  // namespace wsa
