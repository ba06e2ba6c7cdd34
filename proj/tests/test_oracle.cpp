#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "msf/errors.hpp"
#include "msf/families.hpp"
#include "msf/oracle.hpp"
#include "msf/orbit.hpp"

using namespace msf;
using std::complex;

namespace {

OrbitState supported_state(const Family& fam, const BasisVector& root) {
  auto tree = std::make_shared<SchreierTree>(orbit_bfs(fam.gens, root, 100000));
  return orbit_state(tree, fam.gens);
}

}  // namespace

TEST_CASE("densify writes each phase at the permuted row") {
  // two-site diagonal: alpha^(weight - 1) with alpha = -1 on two sites
  Family d = build_dicke(2, 1);
  auto idx = d.gens.find("T");
  REQUIRE(idx.has_value());
  Eigen::MatrixXcd t = densify(d.gens.op(*idx), d.gens.space());
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  want(0, 0) = -1;  // weight 0
  want(1, 1) = 1;
  want(2, 2) = 1;
  want(3, 3) = -1;  // weight 2
  CHECK((t - want).cwiseAbs().maxCoeff() < 1e-12);

  auto sidx = d.gens.find("S1");
  REQUIRE(sidx.has_value());
  Eigen::MatrixXcd s = densify(d.gens.op(*sidx), d.gens.space());
  Eigen::MatrixXcd sw = Eigen::MatrixXcd::Zero(4, 4);
  sw(0, 0) = 1;
  sw(2, 1) = 1;  // |01> -> |10>
  sw(1, 2) = 1;
  sw(3, 3) = 1;
  CHECK((s - sw).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("densify refuses dimensions above the cap") {
  Family w = build_w(4);
  CHECK_THROWS_AS(densify(w.gens.op(0), w.gens.space(), 8), refused_error);
}

TEST_CASE("sparse monomial matrices agree with dense ones") {
  std::mt19937_64 rng(11);
  Family aklt = build_aklt(4, false);
  const SiteSpace& sp = aklt.gens.space();
  for (std::size_t gi = 0; gi < aklt.gens.size(); ++gi) {
    MonomialMatrix m = monomial_matrix(aklt.gens.op(gi), sp);
    CHECK((m.dense() - densify(aklt.gens.op(gi), sp)).cwiseAbs().maxCoeff() < 1e-12);
    // apply_vec equals dense multiply on a random vector
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(m.dim());
    CHECK((m.apply_vec(v) - m.dense() * v).cwiseAbs().maxCoeff() < 1e-9);
  }
  // product convention: right factor acts first
  MonomialMatrix a = monomial_matrix(aklt.gens.op(0), sp);
  MonomialMatrix b = monomial_matrix(aklt.gens.op(1), sp);
  MonomialMatrix ab = monomial_product(a, b);
  CHECK((ab.dense() - a.dense() * b.dense()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state vector places xi over root at unit norm") {
  Family w = build_w(4);
  OrbitState st = supported_state(w, BasisVector::parse("1000"));
  Eigen::VectorXcd v = state_vector(st, w.gens.space());
  CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  const SiteSpace& sp = w.gens.space();
  CHECK(std::abs(v(sp.flat_index(BasisVector::parse("1000"))) - 0.5) < 1e-12);
  CHECK(std::abs(v(sp.flat_index(BasisVector::parse("0001"))) - 0.5) < 1e-12);
  CHECK(std::abs(v(sp.flat_index(BasisVector::parse("0000")))) == 0.0);
}

TEST_CASE("joint fixed space of the symmetric ladder is the single excitation line") {
  Family w = build_w(4);
  Eigen::MatrixXcd basis = joint_fixed_space(w.gens);
  REQUIRE(basis.cols() == 1);
  OrbitState st = supported_state(w, BasisVector::parse("1000"));
  Eigen::VectorXcd v = state_vector(st, w.gens.space());
  // one-dimensional agreement up to global phase
  complex<double> ip = basis.col(0).dot(v);
  CHECK(std::abs(std::abs(ip) - 1.0) < 1e-9);
}

TEST_CASE("joint fixed space dimension counts supported orbits") {
  Family aklt = build_aklt(4, false);
  CHECK(joint_fixed_space(aklt.gens).cols() == 4);
  Family per = build_aklt(4, true);
  CHECK(joint_fixed_space(per.gens).cols() == 1);
  Family d22 = build_dicke(2, 2);  // degenerate weight: two supported orbits
  CHECK(joint_fixed_space(d22.gens).cols() == 2);
}

TEST_CASE("group closure of the cat state stabilizers has eight elements") {
  Family ghz = build_pauli_family(pauli::PauliStabilizerGroup::parse({"XXX", "ZZI", "IZZ"}));
  DenseGroup g = group_enumerate(ghz.gens);
  CHECK(!g.truncated);
  CHECK(g.elements.size() == 8);
  // elements[0] is the identity
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
  CHECK((g.elements[0].dense() - id).cwiseAbs().maxCoeff() < 1e-12);
  // closure: every pairwise product is already present
  for (const auto& a : g.elements)
    for (const auto& b : g.elements) {
      MonomialMatrix ab = monomial_product(a, b);
      bool found = false;
      for (const auto& c : g.elements)
        if (c.row == ab.row && (c.phase - ab.phase).cwiseAbs().maxCoeff() < 1e-9) found = true;
      CHECK(found);
    }
}

TEST_CASE("group cap marks truncation and the averaging step refuses it") {
  Family w = build_w(4);
  DenseGroup big = group_enumerate(w.gens);
  CHECK(!big.truncated);
  CHECK(big.elements.size() == 96);
  DenseGroup cut = group_enumerate(w.gens, 10);
  CHECK(cut.truncated);
  CHECK_THROWS_AS(average_projector(cut), refused_error);
}

TEST_CASE("group average is the projector onto the fixed space") {
  Family ghz = build_pauli_family(pauli::PauliStabilizerGroup::parse({"XXX", "ZZI", "IZZ"}));
  Eigen::MatrixXcd rho = average_projector(group_enumerate(ghz.gens));
  Eigen::MatrixXcd basis = joint_fixed_space(ghz.gens);
  Eigen::MatrixXcd proj = basis * basis.adjoint();
  CHECK((rho - proj).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("basis comparison accepts the matched pair and localizes failures") {
  Family w = build_w(4);
  OrbitState st = supported_state(w, BasisVector::parse("1000"));
  Eigen::VectorXcd v = state_vector(st, w.gens.space());
  Eigen::MatrixXcd basis = joint_fixed_space(w.gens);

  BasisComparison good = compare_basis({v}, basis);
  CHECK(good.agree);
  CHECK(good.detail.empty());
  CHECK(good.max_residual < 1e-8);
  CHECK(good.projector_dist < 1e-8);

  // un-normalized state
  BasisComparison nn = compare_basis({2.0 * v}, basis);
  CHECK(!nn.agree);
  CHECK(nn.max_norm_err > 0.5);
  CHECK(!nn.detail.empty());

  // vector outside the span
  Eigen::VectorXcd off = Eigen::VectorXcd::Zero(v.size());
  off(0) = 1.0;  // |0000> is not in the fixed space
  BasisComparison out = compare_basis({off}, basis);
  CHECK(!out.agree);
  CHECK(out.max_residual > 0.5);

  // duplicated state: orthogonality fails
  BasisComparison dup = compare_basis({v, v}, basis);
  CHECK(!dup.agree);
  CHECK(dup.max_ortho_err > 0.5);

  // dimension mismatch with otherwise clean containment
  Family aklt = build_aklt(4, false);
  Eigen::MatrixXcd big = joint_fixed_space(aklt.gens);
  OrbitState ai = supported_state(aklt, BasisVector::parse("0000"));
  BasisComparison dim = compare_basis({state_vector(ai, aklt.gens.space())}, big);
  CHECK(!dim.agree);
  CHECK(dim.max_residual < 1e-8);  // contained, just not all of it
}

TEST_CASE("full spin chain cross-check: four orbit states span the fixed space") {
  Family aklt = build_aklt(4, false);
  auto reports = orbit_basis_exhaustive(aklt.gens, 10000);
  std::vector<Eigen::VectorXcd> states;
  for (const auto& r : reports) {
    REQUIRE(r.state.has_value());
    states.push_back(state_vector(*r.state, aklt.gens.space()));
  }
  Eigen::MatrixXcd basis = joint_fixed_space(aklt.gens);
  BasisComparison cmp = compare_basis(states, basis);
  CHECK(cmp.agree);
  CHECK(cmp.projector_dist < 1e-8);
}

TEST_CASE("diagonal-only generator sets cut exact coordinate subspaces") {
  // three-variable clause system: fixed space is spanned by satisfying assignments
  Family lme = build_lme(2, "cz_chain");
  Eigen::MatrixXcd basis = joint_fixed_space(lme.gens);
  REQUIRE(basis.cols() == 1);
  OrbitState st = supported_state(lme, BasisVector::parse("00"));
  BasisComparison cmp = compare_basis({state_vector(st, lme.gens.space())}, basis);
  CHECK(cmp.agree);
}
