#pragma once

#include <vector>

#include "gerst/check.hpp"
#include "gerst/jets.hpp"
#include "gerst/sparse_matrix.hpp"

namespace gerst {

/// A choice (sigma, nabla) together with the F it determines.
struct ComparisonData {
  JetDims dims;
  JetIsomorphism sigma;
  Connection connection;
  FormSection F;
};

/// Computes F by solving and checks the formula-F residual in degree <= dims.prec - 2.
/// Throws FormulaFViolation when the residual is nonzero.
ComparisonData make_comparison(const JetDims& dims, const JetIsomorphism& sigma, const Connection& c);

/// sigma_* X (b_1, ..) = sigma(X(sigma^-1 b_1, ..)) on inputs of total y-weight <= max_input.
///
/// X is treated as degree-complete: entries missing beyond its window are assumed to
/// carry only values of degree above the degrees the caller compares.
FormCochain sigma_push(const JetDims& dims, const JetIsomorphism& sigma, const FormCochain& x, int max_input);

/// Phi = sigma_* o exp(-iota_F) o cotr on a normalized cochain over k[y] (n = 1 layout).
MixedCochain comparison_map(const ComparisonData& data, const FormCochain& source, int max_input);

struct PhiOptions {
  std::size_t max_arity = 2;
  /// Source generators: inputs of y-weight <= input_window, outputs of y-weight <= output_ycap.
  int input_window = 1;
  int output_ycap = 1;
  /// Values are compared in total degree <= compare_degree.
  int compare_degree = 2;
};

/// Phi o (nabla_can + delta) = (nabla_can + delta) o Phi on normalized spanning generators.
IdentityCheck check_phi_chain_map(const ComparisonData& data, const PhiOptions& opt);

/// Jets of polyvector fields as cocycles of the source complex (scalar jets):
/// degree 0: c(x) d/dx_i, degree 1: c(x) d/dx_1 ^ d/dx_2, with c a monomial of degree <= x_cap.
/// Entries cover inputs of y-weight <= window.
std::vector<FormCochain> polyvector_classes(const JetDims& dims, int degree, int x_cap, int window);

struct ChoiceComparison {
  int degree = 0;
  std::size_t classes = 0;
  /// Per weight: normal forms of Phi_a(c) and Phi_b(c) modulo coboundaries, one column per class.
  std::vector<int> weights;
  std::vector<std::vector<SparseVec>> normal_a, normal_b;
  /// Rank of the normal-form matrix over all weights (nonzero classes stay nonzero).
  std::size_t rank = 0;
  bool equal = false;
};

struct ChoiceOptions {
  int x_cap = 1;
  /// Target inputs of y-weight <= input_window; weights -input_window .. compare_degree - input_window.
  int input_window = 1;
  int compare_degree = 2;
};

/// Induced maps of two comparison maps on degree-`degree` cohomology, compared weight by
/// weight modulo the coboundaries of the target complex.
ChoiceComparison compare_choices(const ComparisonData& a, const ComparisonData& b, int degree,
                                 const ChoiceOptions& opt);

}  // namespace gerst
