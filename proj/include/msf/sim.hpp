#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "msf/orbit.hpp"
#include "msf/pauli.hpp"

namespace msf {

// Smallest n with n >= (2/eps^2) ln(4/delta): two-sided Hoeffding count covering the
// real and imaginary parts of a mean of unit-modulus samples simultaneously.
std::uint64_t hoeffding_n(double eps, double delta);

// Uniform integer in [0, n), by rejection, identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Born sampling of an orbit state: every member carries probability 1/|orbit|.
const BasisVector& sample_orbit(const OrbitState& st, std::mt19937_64& rng);

// Endpoint of word_len uniformly random generator/inverse applications starting at
// x. An approximate orbit sampler: the endpoint distribution tends toward uniform
// over the orbit as word_len grows, but is exactly uniform only in the limit, so
// prefer sample_orbit whenever the orbit is enumerable.
BasisVector sample_random_word(const GeneratorSet& gens, const BasisVector& x,
                               std::uint64_t word_len, std::mt19937_64& rng);

// gamma * X(a) Z(b) on qudit strings: |y> -> gamma * (prod_j w_j^(b_j y_j)) |y + a>,
// shifts per site mod the site dimension, w_j = exp(2 pi i / d_j).
struct PauliWord {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  Phase gamma = Phase::one();
};

// Accepts a bare letter string over {I,X,Y,Z} covering every site, or
// whitespace-separated site-indexed tokens like "X0 Z2", "X1^2" (qudit powers); an
// optional leading +/-/i/-i token sets the sign. Y is qubit-only shorthand for iXZ;
// a site may appear at most once.
PauliWord parse_pauli_word(const std::string& text, const SiteSpace& space);
PauliWord pauli_word_from_label(const pauli::PauliLabel& label);

// What the estimators need from a state: uniform support samples plus membership
// with relative phase. xi is 1 on the defining representative.
struct StateAccess {
  std::uint64_t size = 0;
  std::function<BasisVector(std::mt19937_64&)> draw;
  std::function<std::optional<Phase>(const BasisVector&)> lookup;
};

StateAccess access_orbit_state(const OrbitState& st);
StateAccess access_pauli_state(const pauli::PauliStabilizerGroup& g);

enum class EstimateMethod { exact_enumeration, monte_carlo };

struct Estimate {
  std::complex<double> value{0.0, 0.0};
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t samples_used = 0;
  EstimateMethod method = EstimateMethod::monte_carlo;
  std::uint64_t seed = 0;
};

// <psi|P|psi> by averaging F(y) = gamma * w^(b.y) xi(y) conj(xi(y+a)) over uniform
// support samples ([y+a not in support] contributes 0); |F| <= 1, so hoeffding_n
// samples give additive error eps with confidence 1-delta.
Estimate estimate_pauli(const StateAccess& st, const SiteSpace& space, const PauliWord& p,
                        double eps, double delta, std::uint64_t seed);
// Same sum taken over every member instead of sampling.
std::complex<double> exact_pauli(const OrbitState& st, const SiteSpace& space,
                                 const PauliWord& p);

// Hermitian observable on k qubit sites, decomposed over the at most 4^k Pauli
// words with Tr-coefficients; the identity term is added exactly and the error and
// confidence budgets are split across the remaining nonzero terms.
Estimate estimate_local(const StateAccess& st, const SiteSpace& space,
                        const std::vector<std::uint32_t>& sites, const Eigen::MatrixXcd& obs,
                        double eps, double delta, std::uint64_t seed);

}  // namespace msf
