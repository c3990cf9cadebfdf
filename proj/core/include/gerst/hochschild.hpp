#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gerst/cochain.hpp"

namespace gerst {

/// Thrown when a cochain space would exceed the configured size budget.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::size_t estimate)
      : std::runtime_error(what + " (estimated " + std::to_string(estimate) + " basis cochains)"),
        estimate_(estimate) {}
  std::size_t estimate() const { return estimate_; }

 private:
  std::size_t estimate_;
};

struct ComplexOptions {
  bool normalized = false;
  /// Weight-capped algebras only: keep cochains whose weight shift lies in
  /// [-window, window]. Each shift slice is computed on inputs of weight
  /// <= cap - max(shift, 0), which is a quotient complex.
  std::optional<int> window;
  std::size_t max_basis = 1'000'000;
};

struct CohomologyReport {
  std::size_t degree = 0;
  std::size_t dim_kernel = 0;
  std::size_t dim_image = 0;
  std::size_t dim_hh = 0;
  std::vector<Cochain> representatives;
};

/// Basis cochains (tuple, output) of one homogeneous piece of C^k.
struct CochainBasis {
  std::size_t arity = 0;
  std::optional<int> input_cap;
  std::vector<std::pair<Index, std::size_t>> elements;
  std::map<std::pair<Index, std::size_t>, std::size_t> position;

  std::size_t size() const { return elements.size(); }
  Cochain cochain(std::size_t i) const;
  Cochain cochain(const SparseVec& coords) const;
  /// Coordinates of c; throws std::logic_error on entries outside the basis.
  SparseVec coordinates(const Cochain& c) const;
};

/// One slice of the complex: shift is ignored for unweighted algebras.
CochainBasis cochain_basis(const Algebra& a, std::size_t arity, const ComplexOptions& opt, int shift = 0);
/// Shifts present in the complex (a single 0 for unweighted algebras).
std::vector<int> complex_shifts(const Algebra& a, const ComplexOptions& opt);
/// Matrix of delta: C^k -> C^{k+1} in the given bases.
SparseMatrix differential_matrix(const Algebra& a, const CochainBasis& from, const CochainBasis& to);

CohomologyReport cohomology(const Algebra& a, std::size_t k, const ComplexOptions& opt = {});

using CochainMap = std::function<Cochain(const Cochain&)>;

class ChainMapError : public std::runtime_error {
 public:
  ChainMapError(const std::string& what, Cochain witness) : std::runtime_error(what), witness_(std::move(witness)) {}
  const Cochain& witness() const { return witness_; }

 private:
  Cochain witness_;
};

/// Checks f(delta x) = delta f(x) for every basis cochain x of arity k; throws
/// ChainMapError with the first failing basis cochain.
void check_chain_map(const Algebra& src, const ComplexOptions& so, const Algebra& dst, const CochainMap& f,
                     std::size_t k);

/// Matrix of H^k(f) in the representative bases chosen by cohomology().
/// Unweighted algebras only. Verifies the chain-map property in degrees k-1 and k first.
SparseMatrix induced_cohomology_map(const Algebra& src, const ComplexOptions& so, const Algebra& dst,
                                    const ComplexOptions& dopt, const CochainMap& f, std::size_t k);

}  // namespace gerst
