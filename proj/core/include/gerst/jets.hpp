#pragma once

#include <optional>
#include <vector>

#include "gerst/check.hpp"
#include "gerst/cochain.hpp"
#include "gerst/connection.hpp"
#include "gerst/form_cochain.hpp"

namespace gerst {

/// j-infinity: f(x) |-> f(x + y) for a y-free section f.
Section jet_map(const Section& f);
/// Evaluation at y = 0.
Section jet_evaluate(const Section& s);

/// nabla_can o j = 0 and nabla_can^2 = 0 on all basis sections with x-degree <= x_cap,
/// and j(ab) = j(a) j(b) on basis pairs.
IdentityCheck check_jet_flatness(const JetDims& dims, int x_cap);

/// sigma = exp(ad f) for a traceless f with no y-degree-0 part.
class JetIsomorphism {
 public:
  JetIsomorphism(const JetDims& dims, Section f);
  static JetIsomorphism identity(const JetDims& dims) { return JetIsomorphism(dims, Section()); }

  const Section& generator() const { return f_; }
  /// e^f s e^-f.
  Section apply(const Section& s) const;
  Section apply_inverse(const Section& s) const;
  FormSection apply(const FormSection& s) const;
  FormSection apply_inverse(const FormSection& s) const;
  /// log(e^f), which recovers f.
  Section logarithm() const;
  /// e^{-f} nabla_can(e^f).
  FormSection maurer_cartan_form() const;

 private:
  JetDims dims_;
  Section f_, exp_, exp_neg_;
};

/// Random generator f: traceless, x-degree <= x_cap, y-degree in [1, y_cap].
Section random_jet_generator(const JetDims& dims, int x_cap, int y_cap, std::size_t terms, Rng& rng);

/// Closed form F = traceless(e^{-f} nabla_can e^f - gamma).
FormSection compute_F_closed(const JetIsomorphism& sigma, const Connection& c, const JetDims& dims);

/// Solves ad(F) = sigma^{-1} nabla_can sigma - nabla_tot on fiber basis elements, with
/// trace(F) = 0. Checks J-linearity of the difference first (throws std::runtime_error
/// when the difference is not J-linear or the system is inconsistent).
FormSection compute_F(const JetIsomorphism& sigma, const Connection& c, const JetDims& dims);

/// J-multilinear extension of a cochain on Mat_n(k): D(E_1 y^b1, ...) = D(E_1, ...) y^{b1 + ...}.
/// `alg` must be make_matrix_algebra(dims.n, ground field).
FormCochain jet_prolong(const JetDims& dims, const Algebra& alg, const Cochain& d, int max_input);
/// Prolongation of the differential operator x^m phi d^k/dx^k (phi in End(Mat_n) given as a
/// matrix on the E_ab basis), d = 1: acts on the fiber as (x + y)^m phi d^k/dy^k.
FormCochain jet_prolong_operator(const JetDims& dims, const SparseMatrix& phi, int m, int k, int max_input);

/// Per-weight de Rham cohomology of the jet cochain complex (d = 1).
struct JetDeRhamSlice {
  int weight = 0;
  std::size_t dim_omega0 = 0, dim_omega1 = 0, rank = 0;
  std::size_t h0 = 0, h1 = 0;
  std::size_t expected_h0 = 0;
  bool image_matches = false;
};

/// Complex Omega^0 (x) C^arity -> Omega^1 (x) C^arity under nabla_can on cochains with
/// inputs of y-weight <= window, for weights in [-window, max_weight]. Also checks that the
/// kernel is spanned by prolongations (expected_h0 of them, independent and flat).
std::vector<JetDeRhamSlice> jet_de_rham_check(const JetDims& dims, std::size_t arity, int window, int max_weight);

/// Cotrace on jets: normalized cochains on k[y] (dims.n == 1 layout) to cochains on
/// Mat_n (x) k[y]: cotr(D)(E_1 y^b1, ...) = E_1 ... E_q D(y^b1, ...).
FormCochain jet_cotrace(int n, const FormCochain& d);
/// Vanishes when some argument is the unit y^0.
bool is_normalized(const FormCochain& d);

}  // namespace gerst
