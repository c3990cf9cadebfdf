#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gerst/scalar.hpp"

namespace gerst {

// Packed monomials: 8 bits per variable, at most three variables. Adding two
// packed monomials adds exponents as long as every exponent stays below 256.
using Mono = std::uint32_t;
constexpr int kMaxJetVars = 3;

inline int mono_exp(Mono m, int i) { return static_cast<int>((m >> (8 * i)) & 0xffU); }
inline Mono mono_unit(int i) { return Mono{1} << (8 * i); }
int mono_degree(Mono m);
/// All exponent vectors in `vars` variables of total degree <= max_degree, by degree then lexicographically.
std::vector<Mono> monomials_up_to(int vars, int max_degree);
/// Monomials dividing m.
std::vector<Mono> divisors(Mono m, int vars);
std::string mono_str(Mono m, int vars, char var);

/// Basis term of Mat_n (x) k[x] (x) k[y]: matrix unit E_ab times x^alpha y^beta.
/// A fiber key is a term with alpha = 0.
using TermKey = std::uint64_t;

inline TermKey term_key(unsigned a, unsigned b, Mono x, Mono y) {
  return (TermKey{a} << 52) | (TermKey{b} << 48) | (TermKey{x} << 24) | TermKey{y};
}
inline unsigned key_row(TermKey k) { return static_cast<unsigned>((k >> 52) & 0xfU); }
inline unsigned key_col(TermKey k) { return static_cast<unsigned>((k >> 48) & 0xfU); }
inline Mono key_x(TermKey k) { return static_cast<Mono>((k >> 24) & 0xffffffU); }
inline Mono key_y(TermKey k) { return static_cast<Mono>(k & 0xffffffU); }
inline TermKey fiber_of(TermKey k) { return k & ~(TermKey{0xffffffU} << 24); }
inline int key_degree(TermKey k) { return mono_degree(key_x(k)) + mono_degree(key_y(k)); }
inline int key_yweight(TermKey k) { return mono_degree(key_y(k)); }

/// Polynomial in x, y with Mat_n coefficients. Zero coefficients are never stored.
class Section {
 public:
  std::map<TermKey, Scalar> terms;

  Section() = default;
  static Section term(TermKey k, const Scalar& c = Scalar(1));
  /// Identity matrix times x^0 y^0.
  static Section identity(int n);

  bool is_zero() const { return terms.empty(); }
  void add(TermKey k, const Scalar& c);
  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  Section& operator*=(const Scalar& s);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Scalar& s, Section a) { return a *= s; }
  friend Section operator*(const Section& a, const Section& b) { return multiply(a, b, -1); }
  friend bool operator==(const Section& a, const Section& b) { return a.terms == b.terms; }

  /// Product with terms of total degree above max_degree dropped (-1 keeps all).
  static Section multiply(const Section& a, const Section& b, int max_degree);
  Section truncated(int max_degree) const;
  /// Keeps terms whose y-weight is at most max_y.
  Section y_truncated(int max_y) const;
  int max_degree() const;
  int min_degree() const;
  int max_yweight() const;

  Section dx(int i) const;
  Section dy(int i) const;
  /// Multiplies by x^m (O-linearity).
  Section times_x(Mono m) const;
  /// Groups terms by fiber key: fiber -> x-polynomial.
  std::map<TermKey, std::map<Mono, Scalar>> by_fiber() const;
  /// Sum of diagonal entries as a scalar polynomial (matrix part E_11).
  Section trace() const;
  /// Removes the trace part: s - tr(s)/n * Id.
  Section traceless(int n) const;
  std::string str(int vars) const;
};

/// [a, b] = ab - ba.
Section commutator(const Section& a, const Section& b, int max_degree = -1);
/// exp(s) = sum s^k/k! truncated at max_degree; s must have no degree-0 term.
Section exp_series(const Section& s, int n, int max_degree);
/// log(1 + s) = sum (-1)^{k+1} s^k/k, s without degree-0 term.
Section log_series(const Section& s, int max_degree);

/// Algebra-valued differential form: exterior index (bitmask over dx_1..dx_d) -> section.
struct FormSection {
  std::map<unsigned, Section> comps;

  bool is_zero() const;
  void add(unsigned mask, const Section& s, const Scalar& c = Scalar(1));
  FormSection& operator+=(const FormSection& o);
  FormSection& operator-=(const FormSection& o);
  FormSection& operator*=(const Scalar& s);
  friend FormSection operator+(FormSection a, const FormSection& b) { return a += b; }
  friend FormSection operator-(FormSection a, const FormSection& b) { return a -= b; }
  friend FormSection operator*(const Scalar& s, FormSection a) { return a *= s; }
  friend bool operator==(const FormSection& a, const FormSection& b);
  FormSection truncated(int max_degree) const;
  int max_yweight() const;
};

int popcount(unsigned m);
/// Sign of dx_I ^ dx_J relative to dx_{I u J}; 0 when I and J intersect.
int wedge_sign(unsigned i, unsigned j);

/// Wedge product of algebra-valued forms (matrix product of coefficients).
FormSection wedge(const FormSection& a, const FormSection& b, int max_degree = -1);
/// Graded commutator [H, G] = HG - (-1)^{kl} GH, i.e. dx_I ^ dx_J (x) [h, g] componentwise.
FormSection graded_commutator(const FormSection& a, const FormSection& b, int max_degree = -1);
/// sum_i dx_i ^ (d/dx_i - d/dy_i) on coefficients: the canonical flat connection on jets.
FormSection nabla_can(const FormSection& a, int d);
/// sum_i dx_i ^ d/dx_i on coefficients (ordinary de Rham differential).
FormSection de_rham(const FormSection& a, int d);
/// One-form sum_i dx_i (x) s_i.
FormSection one_form(const std::vector<Section>& s);

}  // namespace gerst
