#include "wsa/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wsa/error.hpp"

namespace wsa {

namespace {

std::string index_name(const char* what, std::size_t i) {
  std::ostringstream out;
  out << what << '[' << (i + 1) << ']';
  return out.str();
}

}  // namespace

WeightVector::WeightVector(std::vector<double> entries, std::size_t split)
    : entries_(std::move(entries)), split_(split) {
  Violations v;
  v.check(split_ <= entries_.size(), "split index exceeds length");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    v.check(std::isfinite(entries_[i]) && entries_[i] > 0.0,
            index_name("positive finite entry", i));
  }
  if (split_ <= entries_.size()) {
    for (std::size_t i = 1; i < split_; ++i) {
      v.check(entries_[i - 1] >= entries_[i],
              index_name("independent block non-increasing at", i));
    }
  }
  v.throw_if_any();
}

WeightVector WeightVector::plain(std::vector<double> entries) {
  const std::size_t n = entries.size();
  return WeightVector(std::move(entries), n);
}

WeightVector WeightVector::dependent_only(std::vector<double> entries) {
  return WeightVector(std::move(entries), 0);
}

double WeightVector::dependent_sum() const noexcept {
  double sum = 0.0;
  for (double t : dependent()) sum += t;
  return sum;
}

DomainBox::DomainBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("domain box: lower and upper have different lengths");
  }
  if (lower_.empty()) throw std::invalid_argument("domain box: zero dimension");
  Violations v;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    v.check(std::isfinite(lower_[i]) && std::isfinite(upper_[i]) &&
                lower_[i] < upper_[i],
            index_name("domain lower < upper on axis", i));
  }
  v.throw_if_any();
}

DomainBox DomainBox::unit(std::size_t dim) {
  return DomainBox(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

bool DomainBox::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("domain box: dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

bool DomainBox::contains_interior(std::span<const double> x) const {
  return boundary_distance(x) > 0.0;
}

double DomainBox::boundary_distance(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("domain box: dimension mismatch");
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) {
    r = std::min({r, x[i] - lower_[i], upper_[i] - x[i]});
  }
  return r;
}

RationalPoint::RationalPoint(std::vector<std::int64_t> numerators,
                             std::int64_t denominator)
    : p(std::move(numerators)), q(denominator) {
  if (q < 1) throw std::invalid_argument("rational point: denominator must be >= 1");
}

bool emission_less(const RationalPoint& a, const RationalPoint& b) {
  if (a.q != b.q) return a.q < b.q;
  return std::lexicographical_compare(a.p.begin(), a.p.end(), b.p.begin(), b.p.end());
}

Hyperrectangle::Hyperrectangle(std::vector<double> c, std::vector<double> hw)
    : center(std::move(c)), half_widths(std::move(hw)) {
  if (center.size() != half_widths.size()) {
    throw std::invalid_argument("hyperrectangle: center/half-width length mismatch");
  }
  for (double h : half_widths) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::invalid_argument("hyperrectangle: half-widths must be positive and finite");
    }
  }
}

bool Hyperrectangle::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("hyperrectangle: dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(std::fabs(x[i] - center[i]) < half_widths[i])) return false;
  }
  return true;
}

void RectSet::reserve(std::size_t count) {
  centers_.reserve(count * dim_);
  half_widths_.reserve(count * dim_);
}

void RectSet::push_back(std::span<const double> center,
                        std::span<const double> half_widths) {
  if (center.size() != dim_ || half_widths.size() != dim_) {
    throw std::invalid_argument("rect set: dimension mismatch");
  }
  centers_.insert(centers_.end(), center.begin(), center.end());
  half_widths_.insert(half_widths_.end(), half_widths.begin(), half_widths.end());
}

void RectSet::push_back(const Hyperrectangle& rect) {
  push_back(rect.center, rect.half_widths);
}

void RectSet::append(const RectSet& other) {
  if (other.empty()) return;
  if (other.dim_ != dim_) throw std::invalid_argument("rect set: dimension mismatch");
  centers_.insert(centers_.end(), other.centers_.begin(), other.centers_.end());
  half_widths_.insert(half_widths_.end(), other.half_widths_.begin(),
                      other.half_widths_.end());
}

Hyperrectangle RectSet::at(std::size_t i) const {
  const auto c = center(i);
  const auto h = half_widths(i);
  return Hyperrectangle({c.begin(), c.end()}, {h.begin(), h.end()});
}

RectSet RectSet::scaled(double factor) const {
  RectSet out = *this;
  for (double& h : out.half_widths_) h *= factor;
  return out;
}

Hyperrectangle dilate(std::span<const double> ball_center, double radius,
                      const WeightVector& a) {
  if (a.size() != ball_center.size()) {
    throw std::invalid_argument("dilate: weight vector and center differ in length");
  }
  Violations v;
  v.check(radius > 0.0 && radius < 1.0, "radius in (0,1)");
  for (std::size_t i = 0; i < a.size(); ++i) {
    v.check(a[i] >= 1.0, index_name("a_i >= 1 at", i));
  }
  v.throw_if_any();
  std::vector<double> hw(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) hw[i] = std::pow(radius, a[i]);
  return Hyperrectangle({ball_center.begin(), ball_center.end()}, std::move(hw));
}

bool rect_intersects_box(std::span<const double> center,
                         std::span<const double> half_widths,
                         const DomainBox& box) {
  if (center.size() != box.dim() || half_widths.size() != box.dim()) {
    throw std::invalid_argument("rect_intersects_box: dimension mismatch");
  }
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (!(center[i] - half_widths[i] < box.upper()[i])) return false;
    if (!(center[i] + half_widths[i] > box.lower()[i])) return false;
  }
  return true;
}

bool rect_intersects_box(const Hyperrectangle& rect, const DomainBox& box) {
  return rect_intersects_box(rect.center, rect.half_widths, box);
}

}  // namespace wsa
