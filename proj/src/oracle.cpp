#include "msf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "msf/errors.hpp"

namespace msf {

namespace {

std::uint64_t checked_dim(const SiteSpace& space, std::uint64_t dense_cap, const char* stage) {
  if (space.huge || space.total_dim > dense_cap)
    throw refused_error(stage, "space dimension " + (space.huge ? std::string("overflows") : std::to_string(space.total_dim)) +
                                   " exceeds the dense cap " + std::to_string(dense_cap));
  return space.total_dim;
}

struct ColAction {
  std::vector<std::uint32_t> row;
  std::vector<Phase> phase;
  bool diagonal = true;
};

// Column x of the matrix of op: phase[x] at row[x].
ColAction column_action(const MonomialOp& op, const SiteSpace& space, std::uint64_t dim) {
  ColAction a;
  a.row.resize(dim);
  a.phase.resize(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    auto [img, ph] = apply(op, space.from_flat(x));
    a.row[x] = static_cast<std::uint32_t>(space.flat_index(img));
    a.phase[x] = ph;
    if (a.row[x] != x) a.diagonal = false;
  }
  return a;
}

struct PermHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Eigen::MatrixXcd densify(const MonomialOp& op, const SiteSpace& space, std::uint64_t dense_cap) {
  std::uint64_t dim = checked_dim(space, dense_cap, "oracle.densify");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  ColAction a = column_action(op, space, dim);
  for (std::uint64_t x = 0; x < dim; ++x) m(a.row[x], x) = a.phase[x].to_complex();
  return m;
}

Eigen::VectorXcd state_vector(const OrbitState& st, const SiteSpace& space,
                              std::uint64_t dense_cap) {
  std::uint64_t dim = checked_dim(space, dense_cap, "oracle.state");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i < st.tree->members.size(); ++i)
    v(space.flat_index(st.tree->members[i])) = st.norm * st.xi[i].to_complex();
  return v;
}

Eigen::MatrixXcd joint_fixed_space(const GeneratorSet& gens, std::uint64_t dense_cap) {
  const SiteSpace& space = gens.space();
  std::uint64_t dim = checked_dim(space, dense_cap, "oracle.fixed_space");

  std::vector<ColAction> actions;
  actions.reserve(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    actions.push_back(column_action(gens.op(g), space, dim));

  // Diagonal generators first: their joint fixed space is the exact coordinate
  // subspace where every diagonal phase is 1.
  std::vector<char> keep(dim, 1);
  for (const auto& a : actions)
    if (a.diagonal)
      for (std::uint64_t x = 0; x < dim; ++x)
        if (keep[x] && !a.phase[x].is_one()) keep[x] = 0;

  std::vector<std::uint64_t> cols;
  std::vector<std::int64_t> pos(dim, -1);
  for (std::uint64_t x = 0; x < dim; ++x)
    if (keep[x]) {
      pos[x] = static_cast<std::int64_t>(cols.size());
      cols.push_back(x);
    }
  const Eigen::Index c = static_cast<Eigen::Index>(cols.size());

  // Restricted to that subspace, the joint fixed space is the kernel of the
  // Hermitian form H = sum_g (U_g - I)^dag (U_g - I).  Each column of U_g - I
  // holds at most two entries (the image and the source), so H assembles
  // sparsely: H = sum_g (2 I - C_g^dag B - B^dag C_g) with B the coordinate
  // injection and C_g the generator's image of it.
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(c, c);
  bool any_moving = false;
  for (const auto& a : actions) {
    if (a.diagonal) continue;
    any_moving = true;
    for (Eigen::Index j = 0; j < c; ++j) {
      std::uint64_t x = cols[j];
      std::uint64_t y = a.row[x];
      std::complex<double> ph = a.phase[x].to_complex();
      h(j, j) += 2.0;
      std::int64_t j2 = pos[y];
      if (j2 >= 0) {
        h(j, j2) -= std::conj(ph);
        h(j2, j) -= ph;
      }
    }
  }

  Eigen::MatrixXcd basis;
  if (!any_moving || c == 0) {
    basis = Eigen::MatrixXcd::Zero(dim, c);
    for (Eigen::Index j = 0; j < c; ++j) basis(cols[j], j) = 1.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
      throw internal_error("oracle.fixed_space", "eigensolver failed on the residual form");
    const auto& ev = es.eigenvalues();  // ascending
    Eigen::Index null_dim = 0;
    while (null_dim < c && ev(null_dim) <= 1e-12) ++null_dim;
    basis = Eigen::MatrixXcd::Zero(dim, null_dim);
    for (Eigen::Index j = 0; j < c; ++j)
      basis.row(cols[j]) = es.eigenvectors().row(j).leftCols(null_dim);
  }

  // Every returned column must be unit, and fixed by every generator; anything
  // else is a bug in the elimination above, not a property of the input.
  for (Eigen::Index j = 0; j < basis.cols(); ++j)
    if (std::abs(basis.col(j).norm() - 1.0) > 1e-9)
      throw internal_error("oracle.fixed_space", "computed basis vector is not normalized");
  for (const auto& a : actions) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      Eigen::VectorXcd uv = Eigen::VectorXcd::Zero(dim);
      for (std::uint64_t x = 0; x < dim; ++x)
        uv(a.row[x]) += a.phase[x].to_complex() * basis(x, j);
      if ((uv - basis.col(j)).norm() > 1e-9)
        throw internal_error("oracle.fixed_space",
                             "computed basis vector is not fixed by a generator");
    }
  }
  return basis;
}

Eigen::MatrixXcd MonomialMatrix::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::uint64_t x = 0; x < dim(); ++x) m(row[x], x) = phase(x);
  return m;
}

Eigen::VectorXcd MonomialMatrix::apply_vec(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (std::uint64_t x = 0; x < dim(); ++x) out(row[x]) += phase(x) * v(x);
  return out;
}

MonomialMatrix monomial_matrix(const MonomialOp& op, const SiteSpace& space,
                               std::uint64_t dense_cap) {
  std::uint64_t dim = checked_dim(space, dense_cap, "oracle.matrix");
  ColAction a = column_action(op, space, dim);
  MonomialMatrix m;
  m.row = std::move(a.row);
  m.phase.resize(dim);
  for (std::uint64_t x = 0; x < dim; ++x) m.phase(x) = a.phase[x].to_complex();
  return m;
}

MonomialMatrix monomial_product(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.dim() != b.dim())
    throw input_error("oracle.product", "matrix dimensions disagree");
  MonomialMatrix c;
  c.row.resize(a.dim());
  c.phase.resize(a.dim());
  for (std::uint64_t x = 0; x < b.dim(); ++x) {
    c.row[x] = a.row[b.row[x]];
    c.phase(x) = a.phase(b.row[x]) * b.phase(x);
  }
  return c;
}

DenseGroup group_enumerate(const GeneratorSet& gens, std::uint64_t group_cap,
                           std::uint64_t dense_cap) {
  const SiteSpace& space = gens.space();
  std::uint64_t dim = checked_dim(space, dense_cap, "oracle.group");

  std::vector<MonomialMatrix> gen_mats;
  for (std::size_t g = 0; g < gens.size(); ++g)
    gen_mats.push_back(monomial_matrix(gens.op(g), space, dense_cap));

  DenseGroup out;
  MonomialMatrix ident;
  ident.row.resize(dim);
  ident.phase = Eigen::VectorXcd::Ones(dim);
  for (std::uint64_t x = 0; x < dim; ++x) ident.row[x] = static_cast<std::uint32_t>(x);

  std::unordered_map<std::vector<std::uint32_t>, std::vector<std::size_t>, PermHash> buckets;
  auto known = [&](const MonomialMatrix& m) {
    auto it = buckets.find(m.row);
    if (it == buckets.end()) return false;
    for (std::size_t idx : it->second)
      if ((out.elements[idx].phase - m.phase).cwiseAbs().maxCoeff() <= 1e-10) return true;
    return false;
  };
  auto push = [&](MonomialMatrix m) {
    buckets[m.row].push_back(out.elements.size());
    out.elements.push_back(std::move(m));
  };

  push(std::move(ident));
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gen_mats) {
      MonomialMatrix next = monomial_product(out.elements[cur], g);
      if (known(next)) continue;
      if (out.elements.size() >= group_cap) {
        out.truncated = true;
        return out;
      }
      frontier.push_back(out.elements.size());
      push(std::move(next));
    }
  }
  return out;
}

Eigen::MatrixXcd average_projector(const DenseGroup& group) {
  if (group.truncated)
    throw refused_error("oracle.average", "group enumeration was truncated; the average over an "
                                          "incomplete element list is not a projector");
  if (group.elements.empty()) throw input_error("oracle.average", "empty group");
  const std::uint64_t dim = group.elements[0].dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& u : group.elements)
    for (std::uint64_t x = 0; x < dim; ++x) rho(u.row[x], x) += u.phase(x);
  rho /= double(group.elements.size());

  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw internal_error("oracle.average", "group average is not hermitian");
  if ((rho * rho - rho).cwiseAbs().maxCoeff() > 1e-9)
    throw internal_error("oracle.average", "group average is not idempotent");
  for (const auto& u : group.elements) {
    Eigen::MatrixXcd urho(dim, rho.cols());
    for (std::uint64_t x = 0; x < dim; ++x) urho.row(u.row[x]) = u.phase(x) * rho.row(x);
    if ((urho - rho).cwiseAbs().maxCoeff() > 1e-9)
      throw internal_error("oracle.average", "group average is not invariant under an element");
  }
  return rho;
}

BasisComparison compare_basis(const std::vector<Eigen::VectorXcd>& states,
                              const Eigen::MatrixXcd& basis) {
  BasisComparison r;
  const std::size_t d = states.size();
  const Eigen::Index dp = basis.cols();

  auto fail = [&](std::string why) {
    r.agree = false;
    if (r.detail.empty()) r.detail = std::move(why);
  };
  r.agree = true;

  if (dp > 0) {
    double borth = (basis.adjoint() * basis - Eigen::MatrixXcd::Identity(dp, dp))
                       .cwiseAbs()
                       .maxCoeff();
    if (borth > 1e-9) fail("reference basis is not orthonormal");
  }
  for (std::size_t i = 0; i < d; ++i) {
    r.max_norm_err = std::max(r.max_norm_err, std::abs(states[i].norm() - 1.0));
    for (std::size_t j = i + 1; j < d; ++j)
      r.max_ortho_err = std::max(r.max_ortho_err, std::abs(states[i].dot(states[j])));
  }
  if (r.max_norm_err > 1e-9) fail("a state is not normalized");
  if (r.max_ortho_err > 1e-9) fail("states are not pairwise orthogonal");

  if (Eigen::Index(d) != dp)
    fail("dimension mismatch: " + std::to_string(d) + " states vs " + std::to_string(dp) +
         " reference directions");

  if (d > 0 && states[0].size() != basis.rows()) {
    fail("ambient dimension mismatch");
    return r;
  }

  Eigen::MatrixXcd psi(basis.rows(), d);
  for (std::size_t i = 0; i < d; ++i) psi.col(i) = states[i];

  // || Psi Psi^dag - B B^dag ||_F^2 = sum_j ||(I - P_psi) b_j||^2
  //                                 + sum_i ||(I - P_B) psi_i||^2
  // for orthonormal families; each residual is formed by direct subtraction, so
  // a genuinely zero distance stays at roundoff scale instead of being inflated
  // by cancellation in the trace identity.
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double res = (psi.col(i) - basis * (basis.adjoint() * psi.col(i))).norm();
    r.max_residual = std::max(r.max_residual, res);
    dist_sq += res * res;
  }
  for (Eigen::Index j = 0; j < dp; ++j)
    dist_sq += (basis.col(j) - psi * (psi.adjoint() * basis.col(j))).squaredNorm();
  if (r.max_residual > 1e-8) fail("a state leaves the reference span");

  r.projector_dist = std::sqrt(dist_sq);
  if (r.projector_dist > 1e-8) fail("projector distance " + std::to_string(r.projector_dist));
  return r;
}

}  // namespace msf
