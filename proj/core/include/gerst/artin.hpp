#pragma once

#include <stdexcept>
#include <vector>

#include "gerst/scalar.hpp"

namespace gerst {

/// Element of k[t]/(t^N).
class ArtinCoeff {
 public:
  explicit ArtinCoeff(int order) : c_(static_cast<std::size_t>(order)) {
    if (order < 1) throw std::invalid_argument("truncation order must be positive");
  }
  ArtinCoeff(int order, int power, const Scalar& value) : ArtinCoeff(order) {
    if (power < order) c_[power] = value;
  }

  int order() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int k) const { return c_[k]; }
  Scalar& operator[](int k) { return c_[k]; }

  bool is_zero() const {
    for (const auto& s : c_)
      if (!s.is_zero()) return false;
    return true;
  }
  /// Lowest power with a nonzero coefficient, or order() when zero.
  int valuation() const {
    for (int k = 0; k < order(); ++k)
      if (!c_[k].is_zero()) return k;
    return order();
  }

  ArtinCoeff& operator+=(const ArtinCoeff& o) {
    check(o);
    for (int k = 0; k < order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  ArtinCoeff& operator-=(const ArtinCoeff& o) {
    check(o);
    for (int k = 0; k < order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend ArtinCoeff operator+(ArtinCoeff a, const ArtinCoeff& b) { return a += b; }
  friend ArtinCoeff operator-(ArtinCoeff a, const ArtinCoeff& b) { return a -= b; }
  friend ArtinCoeff operator*(const ArtinCoeff& a, const ArtinCoeff& b) {
    a.check(b);
    ArtinCoeff r(a.order());
    for (int i = 0; i < a.order(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; i + j < a.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend ArtinCoeff operator*(const Scalar& s, ArtinCoeff a) {
    for (auto& c : a.c_) c *= s;
    return a;
  }
  friend bool operator==(const ArtinCoeff& a, const ArtinCoeff& b) { return a.c_ == b.c_; }

 private:
  void check(const ArtinCoeff& o) const {
    if (o.order() != order()) throw std::invalid_argument("truncation orders differ");
  }
  std::vector<Scalar> c_;
};

}  // namespace gerst
