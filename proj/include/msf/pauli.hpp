#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "msf/gf2.hpp"
#include "msf/monomial_op.hpp"
#include "msf/phase.hpp"

namespace msf::pauli {

using gf2::Gf2Matrix;
using gf2::Gf2Vector;

// sigma = i^k X(s) Z(t) with k mod 4. X(a)|x> = |x+a>, Z(b)|x> = (-1)^(b.x)|x>,
// and X(a)Z(b) = (-1)^(a.b) Z(b)X(a) drives all label arithmetic.
struct PauliLabel {
  std::uint8_t k = 0;  // power of i, mod 4
  Gf2Vector s, t;

  std::size_t num_qubits() const { return s.size(); }
  bool commutes(const PauliLabel& o) const;  // symplectic form vanishes
  // i^(2k) (-1)^(s.t) — true iff sigma^2 = +I.
  bool squares_to_identity() const;
  // Phase picked up on |x>: i^k * (-1)^(t.x); the image is |x + s>.
  Phase phase_on(const Gf2Vector& x) const;
  Gf2Vector image_of(const Gf2Vector& x) const { return x ^ s; }

  std::string str() const;  // sign prefix + letters over {I,X,Y,Z}
  // Parses an optional prefix in {+,-,i,-i,+i} followed by n letters.
  static PauliLabel parse(const std::string& text);
};

PauliLabel pauli_mul(const PauliLabel& a, const PauliLabel& b);
PauliLabel pauli_pow(const PauliLabel& a, int e);

// Commuting, independent generators, each squaring to +I. Fewer generators than
// qubits is fine (stabilizer codes); what is rejected is a dependent list, a
// non-commuting pair, or any generator with sigma^2 = -I.
class PauliStabilizerGroup {
public:
  PauliStabilizerGroup(std::size_t num_qubits, std::vector<PauliLabel> gens);
  static PauliStabilizerGroup parse(const std::vector<std::string>& texts);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return gens_.size(); }
  const PauliLabel& gen(std::size_t i) const { return gens_.at(i); }
  const std::vector<PauliLabel>& gens() const { return gens_; }

  // Product of generator powers sigma_1^{a_1} ... sigma_m^{a_m}, left to right.
  PauliLabel element(const Gf2Vector& a) const;

private:
  std::size_t n_;
  std::vector<PauliLabel> gens_;
};

// (-1)^u Z(d): one entry of the diagonal subgroup.
struct DiagonalPauli {
  bool u = false;
  Gf2Vector d;
};

// Canonical generators of the diagonal (X-free) subgroup: combinations a in the
// nullspace of the stacked s-rows, multiplied out by label arithmetic.
std::vector<DiagonalPauli> diagonal_subgroup(const PauliStabilizerGroup& g);

// Solves x . d_j = u_j over GF(2); any solution seeds a supported orbit.
Gf2Vector support_representative(const PauliStabilizerGroup& g);

// The support coset x + S, S = row space of the s-matrix, without enumeration.
struct CosetSupport {
  Gf2Vector rep;
  std::vector<Gf2Vector> s_basis;  // canonical row basis of S

  std::uint64_t size() const { return 1ull << s_basis.size(); }
  bool contains(const Gf2Vector& y) const;
  Gf2Vector element(std::uint64_t mask) const;  // rep + combination picked by mask bits
};

CosetSupport coset_support(const PauliStabilizerGroup& g);

// xi(y) relative to a support representative x, by solving for the group element
// mapping x to y and reading its phase off the label. Exact (den-4 cyclotomic).
Phase xi_fast(const PauliStabilizerGroup& g, const Gf2Vector& x, const Gf2Vector& y);

// The label as a monomial operator on n qubits (embedded one-site gates).
MonomialOp pauli_to_monomial(const PauliLabel& p);
// Generalized one-site qudit operator X_d^xe Z_d^ze: |v> -> w^(ze*v) |v+xe mod d>.
MonomialOp qudit_pauli(std::uint32_t d, std::uint32_t xe, std::uint32_t ze);

Gf2Vector to_gf2(const BasisVector& x);       // qubit digits -> bits
BasisVector to_basis(const Gf2Vector& x);     // bits -> qubit digits

}  // namespace msf::pauli
