#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "msf/monomial_op.hpp"
#include "msf/orbit.hpp"

namespace msf {

// Reference implementations by materialized matrices and standard numeric linear
// algebra, sharing no logic with the word/orbit machinery. Agreement between the two
// paths is what the cross-checks certify.

Eigen::MatrixXcd densify(const MonomialOp& op, const SiteSpace& space,
                         std::uint64_t dense_cap = AnalysisCaps{}.dense_cap);

Eigen::VectorXcd state_vector(const OrbitState& st, const SiteSpace& space,
                              std::uint64_t dense_cap = AnalysisCaps{}.dense_cap);

// Orthonormal basis of { v : U v = v for every generator }. Diagonal generators are
// intersected first as exact coordinate subspaces; each remaining generator cuts the
// running subspace through a singular-value split of (U - I) restricted to it, with
// singular values below 1e-9 treated as zero.
Eigen::MatrixXcd joint_fixed_space(const GeneratorSet& gens,
                                   std::uint64_t dense_cap = AnalysisCaps{}.dense_cap);

// A matrix with exactly one nonzero per column: column x holds value phase[x] at row
// row[x]. Permutation structure is exact integers, so group deduplication never
// hinges on hashing floats.
struct MonomialMatrix {
  std::vector<std::uint32_t> row;
  Eigen::VectorXcd phase;

  std::uint64_t dim() const { return row.size(); }
  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd apply_vec(const Eigen::VectorXcd& v) const;
};

MonomialMatrix monomial_matrix(const MonomialOp& op, const SiteSpace& space,
                               std::uint64_t dense_cap = AnalysisCaps{}.dense_cap);
// a * b as matrices (b acts first on vectors).
MonomialMatrix monomial_product(const MonomialMatrix& a, const MonomialMatrix& b);

struct DenseGroup {
  std::vector<MonomialMatrix> elements;  // elements[0] is the identity
  bool truncated = false;
};

// Closure of the generators under matrix product: breadth-first, deduplicated by
// exact column pattern with phases compared to 1e-9. Stops with truncated = true at
// group_cap elements.
DenseGroup group_enumerate(const GeneratorSet& gens,
                           std::uint64_t group_cap = AnalysisCaps{}.group_cap,
                           std::uint64_t dense_cap = AnalysisCaps{}.dense_cap);

// rho = (1/|G|) sum_U U. Certifies rho = rho^dagger, rho^2 = rho and U rho = rho for
// every element (entrywise within 1e-9) before returning; refuses truncated groups.
Eigen::MatrixXcd average_projector(const DenseGroup& group);

struct BasisComparison {
  bool agree = false;
  double max_norm_err = 0.0;    // | ||psi_i|| - 1 |
  double max_ortho_err = 0.0;   // |<psi_i, psi_j>|, i != j
  double max_residual = 0.0;    // || psi_i - B B^dag psi_i ||
  double projector_dist = 0.0;  // || Psi Psi^dag - B B^dag ||_F
  std::string detail;           // first failed check; empty when agree
};

// Orthonormality of the states, containment in span(B), equal dimension, and the
// Frobenius distance between the two projectors, computed through Gram inner
// products so no D x D projector is ever materialized.
BasisComparison compare_basis(const std::vector<Eigen::VectorXcd>& states,
                              const Eigen::MatrixXcd& basis);

}  // namespace msf
