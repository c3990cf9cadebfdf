#include "gerst/scalar.hpp"

#include <charconv>

namespace gerst {

namespace {

thread_local Field tls_field = Field::rationals();

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r.get_si());
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p) || p > (1u << 31))
    throw std::invalid_argument("field modulus must be a prime below 2^31: " + std::to_string(p));
  return Field{p};
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.starts_with("Fp:")) {
    std::uint32_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size())
      throw std::invalid_argument("bad field modulus in '" + std::string(text) + "'");
    return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Fp:<p>)");
}

std::string Field::name() const { return p == 0 ? "Q" : "Fp:" + std::to_string(p); }

Field current_field() { return tls_field; }

FieldGuard::FieldGuard(Field f) : previous_(tls_field) { tls_field = f; }
FieldGuard::~FieldGuard() { tls_field = previous_; }

Scalar::Scalar(long v) {
  if (tls_field.is_rational()) {
    v_ = mpq_class(v);
  } else {
    std::int64_t p = tls_field.p;
    std::int64_t r = v % p;
    v_ = r < 0 ? r + p : r;
  }
}

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw DivisionByZero();
  return Scalar(num) / Scalar(den);
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  if (tls_field.is_rational()) {
    s.v_ = q;
  } else {
    std::int64_t d = reduce(q.get_den(), tls_field.p);
    if (d == 0) throw DivisionByZero();
    std::int64_t n = reduce(q.get_num(), tls_field.p);
    s.v_ = n * pow_mod(d, tls_field.p - 2, tls_field.p) % tls_field.p;
  }
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t(text);
  auto slash = t.find('/');
  mpz_class num, den(1);
  try {
    num = mpz_class(t.substr(0, slash));
    if (slash != std::string::npos) den = mpz_class(t.substr(slash + 1));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed scalar '" + t + "'");
  }
  if (den == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  return from_mpq(q);
}

bool Scalar::is_zero() const {
  if (auto* r = std::get_if<std::int64_t>(&v_)) return *r == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (auto* r = std::get_if<std::int64_t>(&v_)) return *r == 1;
  return std::get<mpq_class>(v_) == 1;
}

namespace {
[[noreturn]] void mixed() { throw std::logic_error("scalar arithmetic mixes Q and F_p values"); }
}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (auto* a = std::get_if<std::int64_t>(&v_)) {
    auto* b = std::get_if<std::int64_t>(&o.v_);
    if (!b) mixed();
    *a += *b;
    if (*a >= static_cast<std::int64_t>(tls_field.p)) *a -= tls_field.p;
    return *this;
  }
  auto* b = std::get_if<mpq_class>(&o.v_);
  if (!b) mixed();
  std::get<mpq_class>(v_) += *b;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (auto* a = std::get_if<std::int64_t>(&v_)) {
    auto* b = std::get_if<std::int64_t>(&o.v_);
    if (!b) mixed();
    *a = *a * *b % tls_field.p;
    return *this;
  }
  auto* b = std::get_if<mpq_class>(&o.v_);
  if (!b) mixed();
  std::get<mpq_class>(v_) *= *b;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar s = *this;
  if (auto* a = std::get_if<std::int64_t>(&s.v_)) {
    *a = pow_mod(*a, tls_field.p - 2, tls_field.p);
  } else {
    auto& q = std::get<mpq_class>(s.v_);
    q = 1 / q;
  }
  return s;
}

Scalar Scalar::magnitude() const {
  if (is_zero()) return *this;
  Scalar s = *this;
  if (auto* a = std::get_if<std::int64_t>(&s.v_)) {
    *a = 1;
  } else {
    auto& q = std::get<mpq_class>(s.v_);
    q = abs(q);
  }
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (auto* a = std::get_if<std::int64_t>(&s.v_)) {
    if (*a != 0) *a = tls_field.p - *a;
  } else {
    auto& q = std::get<mpq_class>(s.v_);
    q = -q;
  }
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.v_.index() != b.v_.index()) mixed();
  if (auto* x = std::get_if<std::int64_t>(&a.v_)) return *x == std::get<std::int64_t>(b.v_);
  return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

std::string Scalar::str() const {
  if (auto* r = std::get_if<std::int64_t>(&v_)) return std::to_string(*r) + "/1";
  const auto& q = std::get<mpq_class>(v_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t Scalar::height() const {
  if (std::holds_alternative<std::int64_t>(v_)) return 1;
  const auto& q = std::get<mpq_class>(v_);
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace gerst
