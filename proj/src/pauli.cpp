#include "msf/pauli.hpp"

#include "msf/errors.hpp"

namespace msf::pauli {

bool PauliLabel::commutes(const PauliLabel& o) const {
  return (s.dot(o.t) ^ t.dot(o.s)) == 0;
}

bool PauliLabel::squares_to_identity() const {
  // sigma^2 = i^(2k) (-1)^(s.t) I.
  return ((k + (s.dot(t) ? 1 : 0)) % 2) == 0;
}

Phase PauliLabel::phase_on(const Gf2Vector& x) const {
  int e = k + (t.dot(x) ? 2 : 0);
  return Phase::root_of_unity(e, 4);
}

std::string PauliLabel::str() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  // Each printed Y carries an implicit factor of i, so deduct it from k.
  std::size_t ys = 0;
  std::string letters;
  for (std::size_t q = 0; q < s.size(); ++q) {
    bool xs = s.get(q), zs = t.get(q);
    if (xs && zs) ++ys;
    letters += xs ? (zs ? 'Y' : 'X') : (zs ? 'Z' : 'I');
  }
  return prefix[(k % 4 + 4 - ys % 4) % 4] + letters;
}

PauliLabel PauliLabel::parse(const std::string& text) {
  std::size_t pos = 0;
  std::uint8_t k = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') k = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    k = (k + 1) % 4;
    ++pos;
  }
  std::size_t n = text.size() - pos;
  if (n == 0) throw input_error("pauli.parse", "no letters in '" + text + "'");
  PauliLabel p;
  p.s = Gf2Vector(n);
  p.t = Gf2Vector(n);
  for (std::size_t q = 0; q < n; ++q) {
    switch (text[pos + q]) {
      case 'I':
        break;
      case 'X':
        p.s.set(q, true);
        break;
      case 'Z':
        p.t.set(q, true);
        break;
      case 'Y':  // Y = i X Z
        p.s.set(q, true);
        p.t.set(q, true);
        k = (k + 1) % 4;
        break;
      default:
        throw input_error("pauli.parse", std::string("bad letter '") + text[pos + q] + "' in '" +
                                             text + "'");
    }
  }
  p.k = k;
  return p;
}

PauliLabel pauli_mul(const PauliLabel& a, const PauliLabel& b) {
  if (a.num_qubits() != b.num_qubits())
    throw input_error("pauli.mul", "labels act on different qubit counts");
  PauliLabel r;
  // Moving X(s_b) left through Z(t_a) costs (-1)^(t_a . s_b).
  r.k = static_cast<std::uint8_t>((a.k + b.k + (a.t.dot(b.s) ? 2 : 0)) % 4);
  r.s = a.s ^ b.s;
  r.t = a.t ^ b.t;
  return r;
}

PauliLabel pauli_pow(const PauliLabel& a, int e) {
  PauliLabel base = a;
  if (e < 0) {
    // (i^k X(s)Z(t))^-1 = i^-k Z(t)X(s) = i^-k (-1)^(s.t) X(s)Z(t).
    base.k = static_cast<std::uint8_t>(((4 - a.k) % 4 + (a.s.dot(a.t) ? 2 : 0)) % 4);
    e = -e;
  }
  PauliLabel r;
  r.s = Gf2Vector(a.num_qubits());
  r.t = Gf2Vector(a.num_qubits());
  for (int i = 0; i < e; ++i) r = pauli_mul(r, base);
  return r;
}

PauliStabilizerGroup::PauliStabilizerGroup(std::size_t num_qubits, std::vector<PauliLabel> gens)
    : n_(num_qubits), gens_(std::move(gens)) {
  if (gens_.empty()) throw input_error("pauli.group", "need at least one generator");
  if (gens_.size() > n_)
    throw input_error("pauli.group", "more generators than qubits cannot be independent");
  for (const auto& g : gens_) {
    if (g.num_qubits() != n_) throw input_error("pauli.group", "generator qubit count mismatch");
    if (!g.squares_to_identity())
      throw input_error("pauli.group", "generator " + g.str() +
                                           " squares to -I; no +1 eigenspace exists for it");
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!gens_[i].commutes(gens_[j]))
        throw input_error("pauli.group", "generators " + gens_[i].str() + " and " + gens_[j].str() +
                                             " do not commute");
  // Independence: rank of stacked [s|t] rows equals the generator count.
  std::vector<Gf2Vector> rows;
  for (const auto& g : gens_) {
    Gf2Vector row(2 * n_);
    for (std::size_t q = 0; q < n_; ++q) {
      row.set(q, g.s.get(q));
      row.set(n_ + q, g.t.get(q));
    }
    rows.push_back(std::move(row));
  }
  if (Gf2Matrix::from_rows(std::move(rows)).rank() != gens_.size())
    throw input_error("pauli.group", "generators are not independent");
}

PauliStabilizerGroup PauliStabilizerGroup::parse(const std::vector<std::string>& texts) {
  std::vector<PauliLabel> gens;
  for (const auto& t : texts) gens.push_back(PauliLabel::parse(t));
  if (gens.empty()) throw input_error("pauli.group", "no generator strings given");
  std::size_t n = gens[0].num_qubits();
  return PauliStabilizerGroup(n, std::move(gens));
}

PauliLabel PauliStabilizerGroup::element(const Gf2Vector& a) const {
  if (a.size() != gens_.size())
    throw input_error("pauli.group", "combination length does not match generator count");
  PauliLabel r;
  r.s = Gf2Vector(n_);
  r.t = Gf2Vector(n_);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (a.get(i)) r = pauli_mul(r, gens_[i]);
  return r;
}

std::vector<DiagonalPauli> diagonal_subgroup(const PauliStabilizerGroup& g) {
  // Combinations with vanishing X part: nullspace of the transposed system a . s = 0,
  // i.e. rows indexed by qubits. Build the transpose explicitly.
  Gf2Matrix st(g.num_qubits(), g.size());
  for (std::size_t q = 0; q < g.num_qubits(); ++q)
    for (std::size_t i = 0; i < g.size(); ++i) st.row(q).set(i, g.gen(i).s.get(q));
  std::vector<DiagonalPauli> out;
  for (const auto& a : st.nullspace()) {
    PauliLabel d = g.element(a);
    if (!d.s.is_zero())
      throw internal_error("pauli.diagonal", "combination advertised as diagonal has an X part");
    if (d.k % 2 != 0)
      throw internal_error("pauli.diagonal", "diagonal element with odd i-power cannot square to I");
    out.push_back({d.k == 2, d.t});
  }
  return out;
}

Gf2Vector support_representative(const PauliStabilizerGroup& g) {
  std::vector<DiagonalPauli> diag = diagonal_subgroup(g);
  if (diag.empty()) return Gf2Vector(g.num_qubits());  // no diagonal constraints
  std::vector<Gf2Vector> rows;
  Gf2Vector rhs(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    rows.push_back(diag[i].d);
    rhs.set(i, diag[i].u);
  }
  auto x = Gf2Matrix::from_rows(std::move(rows)).solve(rhs);
  if (!x)
    throw internal_error("pauli.support",
                         "diagonal constraints are inconsistent for a validated group");
  return *x;
}

bool CosetSupport::contains(const Gf2Vector& y) const {
  Gf2Vector delta = y ^ rep;
  if (s_basis.empty()) return delta.is_zero();
  // Membership in the row space: eliminate delta against the basis.
  Gf2Matrix m(s_basis.size(), rep.size());
  for (std::size_t i = 0; i < s_basis.size(); ++i) m.row(i) = s_basis[i];
  Gf2Matrix mt(rep.size(), s_basis.size());
  for (std::size_t q = 0; q < rep.size(); ++q)
    for (std::size_t i = 0; i < s_basis.size(); ++i) mt.row(q).set(i, s_basis[i].get(q));
  return mt.solve(delta).has_value();
}

Gf2Vector CosetSupport::element(std::uint64_t mask) const {
  Gf2Vector y = rep;
  for (std::size_t i = 0; i < s_basis.size(); ++i)
    if ((mask >> i) & 1) y ^= s_basis[i];
  return y;
}

CosetSupport coset_support(const PauliStabilizerGroup& g) {
  CosetSupport cs;
  cs.rep = support_representative(g);
  std::vector<Gf2Vector> s_rows;
  for (const auto& gen : g.gens()) s_rows.push_back(gen.s);
  cs.s_basis = Gf2Matrix::from_rows(std::move(s_rows)).row_basis();
  return cs;
}

Phase xi_fast(const PauliStabilizerGroup& g, const Gf2Vector& x, const Gf2Vector& y) {
  // Find a combination with s-part x + y, then read the phase of that element on |x>.
  Gf2Vector target = x ^ y;
  Gf2Matrix st(g.num_qubits(), g.size());
  for (std::size_t q = 0; q < g.num_qubits(); ++q)
    for (std::size_t i = 0; i < g.size(); ++i) st.row(q).set(i, g.gen(i).s.get(q));
  auto a = st.solve(target);
  if (!a) throw input_error("pauli.xi", "y is not in the orbit of x under the group");
  PauliLabel el = g.element(*a);
  return el.phase_on(x);
}

MonomialOp pauli_to_monomial(const PauliLabel& p) {
  std::vector<MonomialOp> factors;
  std::size_t n = p.num_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    bool xs = p.s.get(q), zs = p.t.get(q);
    Phase extra = (q == 0) ? Phase::root_of_unity(p.k, 4) : Phase::one();
    if (!xs && !zs && q != 0) continue;  // identity site; site 0 kept to carry i^k
    // X^xs Z^zs as a one-site gate: |b> -> (-1)^(zs*b) |b + xs>.
    std::vector<std::uint32_t> perm = xs ? std::vector<std::uint32_t>{1, 0}
                                         : std::vector<std::uint32_t>{0, 1};
    std::vector<Phase> phases{extra, zs ? extra * Phase::minus_one() : extra};
    factors.push_back(MonomialOp::embedded(
        LocalMonomialGate({2}, std::move(perm), std::move(phases)), {static_cast<std::uint32_t>(q)}));
  }
  return MonomialOp::product(std::move(factors));
}

MonomialOp qudit_pauli(std::uint32_t d, std::uint32_t xe, std::uint32_t ze) {
  if (d < 2) throw input_error("pauli.qudit", "local dimension must be >= 2");
  std::vector<std::uint32_t> perm(d);
  std::vector<Phase> phases(d);
  for (std::uint32_t v = 0; v < d; ++v) {
    perm[v] = (v + xe) % d;
    phases[v] = Phase::root_of_unity(static_cast<std::int64_t>(ze) * v, d);
  }
  return MonomialOp::embedded(LocalMonomialGate({d}, std::move(perm), std::move(phases)), {0});
}

Gf2Vector to_gf2(const BasisVector& x) {
  Gf2Vector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw input_error("pauli", "basis vector has a non-qubit digit");
    v.set(i, x[i] == 1);
  }
  return v;
}

BasisVector to_basis(const Gf2Vector& x) {
  std::vector<std::uint32_t> vals(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vals[i] = x.get(i) ? 1 : 0;
  return BasisVector(std::move(vals));
}

}  // namespace msf::pauli
