#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace gerst {

/// Coefficient field: the rationals (p == 0) or the prime field F_p.
struct Field {
  std::uint32_t p = 0;

  static Field rationals() { return Field{0}; }
  static Field prime(std::uint32_t p);
  /// Parses "Q" or "Fp:<p>".
  static Field parse(std::string_view text);

  bool is_rational() const { return p == 0; }
  std::string name() const;
  friend bool operator==(Field, Field) = default;
};

/// Field in effect on the calling thread. Defaults to Q.
Field current_field();

/// Installs a field for the lifetime of the guard (thread-local).
class FieldGuard {
 public:
  explicit FieldGuard(Field f);
  ~FieldGuard();
  FieldGuard(const FieldGuard&) = delete;
  FieldGuard& operator=(const FieldGuard&) = delete;

 private:
  Field previous_;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Exact field element. The representation follows the thread's current
/// field at construction time: an mpq_class over Q, a reduced residue over
/// F_p. Mixing the two is a logic error.
class Scalar {
 public:
  Scalar() : Scalar(0L) {}
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT
  static Scalar fraction(long num, long den);
  static Scalar from_mpq(const mpq_class& q);
  /// Accepts "n" or "n/d" with arbitrary-size integers.
  static Scalar parse(std::string_view text);

  bool is_zero() const;
  bool is_one() const;
  bool is_modular() const { return std::holds_alternative<std::int64_t>(v_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;
  Scalar inverse() const;
  /// |x| over Q; 1 for a nonzero residue (there is no order on F_p).
  Scalar magnitude() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "num/den" (always with a denominator). Residues print as "r/1".
  std::string str() const;
  /// Numerator and denominator size in bits, used by pivot heuristics.
  std::size_t height() const;

 private:
  std::variant<std::int64_t, mpq_class> v_;
};

}  // namespace gerst
