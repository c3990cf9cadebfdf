#pragma once

#include <stdexcept>
#include <vector>

#include "gerst/check.hpp"
#include "gerst/form_cochain.hpp"

namespace gerst {

/// Connection d + ad(gamma) on Mat_n over the polynomial model. gamma_i are
/// the dx_i components: traceless, y-free sections.
struct Connection {
  std::vector<Section> gamma;

  static Connection trivial(const JetDims& dims);
  FormSection gamma_form() const { return one_form(gamma); }
};

/// Random connection: gamma_i with x-degree <= x_cap, traceless.
Connection random_connection(const JetDims& dims, int x_cap, std::size_t terms, Rng& rng);

/// nabla = d + ad(gamma) on algebra-valued forms (acting on jets through nabla_tot).
FormSection covariant_derivative(const JetDims& dims, const Connection& c, const FormSection& h);
/// theta = d gamma + 1/2 [gamma, gamma].
FormSection curvature(const JetDims& dims, const Connection& c);

/// Basis sections E_ab x^alpha with |alpha| <= x_cap, as 0-forms.
std::vector<Section> basis_sections(const JetDims& dims, int x_cap);

/// d o d = 0 on every basis section times every constant form.
IdentityCheck check_de_rham_square(const JetDims& dims, int x_cap);
/// ad(theta) = nabla o nabla on basis 0-forms and 1-forms.
IdentityCheck check_curvature(const JetDims& dims, const Connection& c, int x_cap);
/// nabla(ab) = nabla(a) b + a nabla(b) on basis pairs.
IdentityCheck check_leibniz(const JetDims& dims, const Connection& c, int x_cap);
/// nabla maps traceless sections to traceless forms.
IdentityCheck check_traceless_preserved(const JetDims& dims, const Connection& c, int x_cap);

/// Thrown when F fails nabla_tot F + 1/2 [F, F] + theta = 0.
class FormulaFViolation : public std::runtime_error {
 public:
  FormulaFViolation(FormSection r, Scalar norm)
      : std::runtime_error("formula F residual is nonzero: " + norm.str()), residual(std::move(r)) {}
  FormSection residual;
};

struct AdiotaOptions {
  std::size_t max_arity = 2;
  /// Generators have inputs of total y-weight <= input_window ...
  int input_window = 1;
  /// ... and outputs E_ab y^beta with |beta| <= output_ycap.
  int output_ycap = 1;
  /// Values are compared in total degree <= compare_degree (-1: everything).
  int compare_degree = -1;
  std::vector<unsigned> masks{0};
};

struct AdiotaReport {
  FormSection formula_residual;
  IdentityCheck formula{"formula-F"};
  IdentityCheck delta_part{"conjugated delta"};
  IdentityCheck ad_part{"conjugated ad F"};
  IdentityCheck nabla_part{"conjugated nabla"};
  IdentityCheck conjugation{"adiota"};
  std::size_t generators = 0;

  bool passed() const {
    return formula.passed() && delta_part.passed() && ad_part.passed() && nabla_part.passed() &&
           conjugation.passed();
  }
};

/// nabla_tot F + 1/2 [F, F] + theta, truncated at `degree` (-1 keeps all).
FormSection formula_F_residual(const JetDims& dims, const Connection& c, const FormSection& f, int degree);

/// Checks exp(iota_F)(nabla_tot + delta + ad F)exp(-iota_F) = nabla_tot + delta + iota_theta
/// on spanning generators, plus the three conjugation formulas it is assembled from.
/// Throws FormulaFViolation when F does not satisfy the hypothesis.
AdiotaReport adiota_conjugate(const JetDims& dims, const Connection& c, const FormSection& f,
                              const AdiotaOptions& opt);

/// a and b agree on inputs of weight <= max_input, values in degree <= max_degree.
/// Throws std::logic_error when either side is not known on that window.
FormCochain difference_on(const FormCochain& a, const FormCochain& b, int max_input, int max_degree);
MixedCochain difference_on(const MixedCochain& a, const MixedCochain& b, int max_input, int max_degree);
Scalar defect_norm(const MixedCochain& c);

}  // namespace gerst
