#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msf/monomial_op.hpp"
#include "msf/pauli.hpp"
#include "msf/spec_io.hpp"

namespace msf {

// Multiplication table of a finite group with 0 as the identity, plus a generating
// subset used wherever one operator per group generator suffices.
struct FiniteGroupTable {
  std::uint32_t order = 1;
  std::vector<std::vector<std::uint32_t>> mul;
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> gens;

  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[a][b]; }

  static FiniteGroupTable cyclic(std::uint32_t m);
  static FiniteGroupTable symmetric3();
  // Validates: 0 is the identity, rows and columns permute, associativity (order
  // capped at 128 for the cubic check), inverses, and that gens generate.
  static FiniteGroupTable from_mul(std::vector<std::vector<std::uint32_t>> mul,
                                   std::vector<std::uint32_t> gens);
};

// Oriented 2-sphere cell complex: directed edges, faces as cyclic signed edge walks.
struct SphereLattice {
  struct Edge {
    std::uint32_t from, to;
  };
  std::uint32_t num_vertices = 0;
  std::vector<Edge> edges;
  // (edge index, +1/-1); +1 traverses along the edge direction.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> faces;

  // Euler characteristic 2, each face a closed walk, every edge in exactly two
  // faces with opposite orientation. Throws input_error on violation.
  void validate() const;

  static SphereLattice tetrahedron();
  static SphereLattice cube();
  static SphereLattice octahedron();
  static SphereLattice theta();
};

// A sequence of self-inverse classical gates acting on bit strings.
struct ReversibleCircuit {
  struct Gate {
    enum Kind { Not, Cnot, Toffoli } kind = Not;
    std::uint32_t a = 0, b = 0, c = 0;  // controls first, target last
  };
  std::uint32_t n = 0;
  std::vector<Gate> gates;

  BasisVector apply(BasisVector x) const;
  BasisVector unapply(BasisVector y) const;  // gates in reverse order
  nlohmann::json to_json() const;
  static ReversibleCircuit from_json(const nlohmann::json& j);
};

// A generator set with known support representatives and provenance.
struct Family {
  GeneratorSet gens;
  std::vector<BasisVector> seeds;
  nlohmann::json metadata;
};

// Symmetric-group swaps plus a weight-counting diagonal whose phases are exact n-th
// roots of unity. Requires 1 <= k <= n; for k < n the weight-k orbit is the single
// supported one, while k = n degenerately also supports the weight-0 orbit.
Family build_dicke(std::uint32_t n, std::uint32_t k);
Family build_w(std::uint32_t n);  // dicke with k = 1

// Spin-1 chain with the two-site orthogonal gate (signed pair swaps plus a cyclic
// diagonal orbit 00 -> 11 -> 22 -> 00); open chains keep every orbit, the periodic
// wrap generator excludes some.
Family build_aklt(std::uint32_t n, bool periodic);

// One qudit site of dimension |G| per lattice edge. Plaquette generators are
// diagonal, flagging non-identity face holonomy (edge factors multiplied from the
// last walk step to the first) with phase -1; vertex generators permute
// configurations by the gauge action of each group generator at the vertex.
Family build_quantum_double(const FiniteGroupTable& g, const SphereLattice& lat);

// Product of cyclic groups Z_{n_1} x ... x Z_{n_l}, one site per factor: translation
// generators for the given subgroup generators of H, plus character diagonals for a
// computed generating set of the dual subgroup, phase-anchored at rep. The unique
// supported state is the uniform superposition over the coset rep + H.
Family build_coset(const std::vector<std::uint32_t>& factors,
                   const std::vector<std::vector<std::uint32_t>>& h_gens,
                   const std::vector<std::uint32_t>& rep);

// Conjugates bit flips on the first k wires and phase flips on the rest through the
// circuit: the single supported orbit is the circuit image of the 2^k input cube,
// giving the coherent encoding of that uniform distribution.
Family build_coherent_prob(const ReversibleCircuit& c, std::uint32_t k);

// n qudits of dimension n with negated-swap generators: the supported orbit is the
// set of permutation strings, with permutation-sign amplitudes.
Family build_laughlin(std::uint32_t n);

// Generators D X_i D^-1 for a named unit-modulus diagonal D over {ones, cz_chain,
// cz_complete, i_weight}: the unique supported state is D applied to the uniform
// superposition (graph states for the cz choices).
Family build_lme(std::uint32_t n, const std::string& diag_name);

// Monomial generator set realizing a Pauli stabilizer group, seeded with a computed
// support representative.
Family build_pauli_family(const pauli::PauliStabilizerGroup& g);

// Builders for every function-backed constructor the family operators record, so
// saved generator files round-trip.
const FnRegistry& family_fn_registry();

// tr(sigma . m(y_0) m(y_1) ...) with m(0) = X, m(1) = Y, m(2) = Z and sigma indexed
// I,X,Y,Z by 0..3: closed-form reference amplitudes for the spin-1 chain states.
std::complex<double> aklt_trace(const BasisVector& y, int sigma);

}  // namespace msf
