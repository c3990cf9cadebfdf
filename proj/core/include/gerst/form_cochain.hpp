#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gerst/jet_poly.hpp"
#include "gerst/random.hpp"

namespace gerst {

/// Desk jet model sizes: d coordinates, Mat_n fibers, value precision.
struct JetDims {
  int d = 1;
  int n = 1;
  /// Section terms of total (x, y) degree above prec are dropped; -1 keeps everything.
  int prec = -1;
};

/// Arguments of a jet cochain: fiber basis elements E_ab y^beta (x-part zero).
using FiberTuple = std::vector<TermKey>;

int tuple_yweight(const FiberTuple& t);
/// Fiber basis elements with y-weight <= max_y, by weight.
std::vector<TermKey> fiber_elements(const JetDims& dims, int max_y);
/// All argument tuples with total y-weight <= max_total_y.
std::vector<FiberTuple> fiber_tuples(const JetDims& dims, std::size_t arity, int max_total_y);

/// Element of Omega^* (x) C^q(J(A)): O-multilinear cochains on the fiber
/// Mat_n (x) k[y] with polynomial values, tensored with constant forms.
///
/// Entries are stored sparsely per (form index, argument tuple). When `cap`
/// is set the entries are only known on tuples of total y-weight <= cap;
/// without a cap the stored entries are the whole cochain.
struct FormCochain {
  std::size_t arity = 0;
  std::map<std::pair<unsigned, FiberTuple>, Section> entries;
  std::optional<int> cap;

  FormCochain() = default;
  explicit FormCochain(std::size_t q, std::optional<int> c = std::nullopt) : arity(q), cap(c) {}
  /// Arity-0 cochain holding a form.
  static FormCochain from_form(const FormSection& h);
  FormSection to_form() const;

  bool is_zero() const { return entries.empty(); }
  std::size_t nonzeros() const;
  void add(unsigned mask, const FiberTuple& t, const Section& v, const Scalar& c = Scalar(1));
  FormCochain& operator+=(const FormCochain& o);
  FormCochain& operator-=(const FormCochain& o);
  FormCochain& operator*=(const Scalar& s);
  friend FormCochain operator+(FormCochain a, const FormCochain& b) { return a += b; }
  friend FormCochain operator-(FormCochain a, const FormCochain& b) { return a -= b; }
  friend FormCochain operator*(const Scalar& s, FormCochain a) { return a *= s; }
  friend bool operator==(const FormCochain& a, const FormCochain& b);

  /// Entries on tuples of weight <= max_input with value terms of degree <= max_degree.
  FormCochain restricted(int max_input, int max_degree) const;
  /// Largest (value y-weight - input y-weight) over entries.
  int shift() const;
};

/// Exact "size" of a defect: the sum of |coefficients| over Q, the number of
/// nonzero coefficients over F_p.
Scalar defect_norm(const FormCochain& c);
Scalar defect_norm(const FormSection& s);

/// Hochschild differential delta = [mu, .]_L. The result is computed on
/// tuples of total y-weight <= window.
FormCochain delta(const JetDims& dims, const FormCochain& d, int window);
/// Graded bracket [w (x) D, e (x) E] = (-1)^{|D||e|} w^e (x) [D, E] with |D| = arity - 1.
FormCochain bracket_L(const JetDims& dims, const FormCochain& x, const FormCochain& y);
/// Contraction iota_H = -[H, .]_L for an algebra-valued form H.
FormCochain iota(const JetDims& dims, const FormSection& h, const FormCochain& d);
/// ad H = -[delta H, .]_L, evaluated through the inner derivations ad h.
FormCochain ad_inner(const JetDims& dims, const FormSection& h, const FormCochain& d);
/// Lie derivative of each component along the inner derivation b -> [h, b] (h a section).
FormCochain inner_lie(const JetDims& dims, const Section& h, const FormCochain& d);
/// nabla_tot = sum_i dx_i ^ L_{X_i}, X_i = d/dx_i - d/dy_i + ad gamma_i.
FormCochain nabla_tot(const JetDims& dims, const std::vector<Section>& gamma, const FormCochain& d);
/// Same connection on algebra-valued forms.
FormSection nabla_tot(const JetDims& dims, const std::vector<Section>& gamma, const FormSection& h);
/// Sum of cochains of several arities, keyed by arity (iota lowers the arity by one).
struct MixedCochain {
  std::map<std::size_t, FormCochain> parts;

  MixedCochain() = default;
  MixedCochain(const FormCochain& c) { add(c); }  // NOLINT(google-explicit-constructor)
  void add(const FormCochain& c, const Scalar& s = Scalar(1));
  MixedCochain& operator+=(const MixedCochain& o);
  MixedCochain& operator-=(const MixedCochain& o);
  friend MixedCochain operator+(MixedCochain a, const MixedCochain& b) { return a += b; }
  friend MixedCochain operator-(MixedCochain a, const MixedCochain& b) { return a -= b; }
  bool is_zero() const;
  std::size_t nonzeros() const;

  /// Applies an arity-changing linear operator part by part.
  template <class Op>
  MixedCochain map(Op&& op) const {
    MixedCochain out;
    for (const auto& [q, c] : parts) out.add(op(c));
    return out;
  }
};

/// sum_k (s iota_F)^k / k!, a finite sum since forms stop at degree d.
MixedCochain exp_iota(const JetDims& dims, const FormSection& f, const MixedCochain& d, int s = 1);

/// Single-entry cochains dx_I (x) (tau -> g): tau of total y-weight <= max_input,
/// g a fiber element of y-weight <= max_output, I over the given masks.
std::vector<FormCochain> spanning_generators(const JetDims& dims, std::size_t arity, int max_input,
                                             int max_output, const std::vector<unsigned>& masks = {0});

/// Random algebra-valued form of the given degree, `terms` terms per component,
/// x-degree <= x_cap and y-weight in [y_min, y_cap].
FormSection random_form(const JetDims& dims, int form_degree, int x_cap, int y_min, int y_cap, std::size_t terms,
                        Rng& rng, bool traceless);

}  // namespace gerst
