#include "msf/monomial_op.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "msf/errors.hpp"

namespace msf {

LocalMonomialGate::LocalMonomialGate(std::vector<std::uint32_t> dims_,
                                     std::vector<std::uint32_t> perm_, std::vector<Phase> phases_)
    : dims(std::move(dims_)), perm(std::move(perm_)), phases(std::move(phases_)) {
  if (dims.empty()) throw input_error("core.gate", "gate needs at least one site");
  std::uint64_t size = 1;
  for (auto d : dims) {
    if (d < 2) throw input_error("core.gate", "gate local dimension must be >= 2");
    size *= d;
    if (size > (1ull << 24)) throw input_error("core.gate", "gate table too large");
  }
  if (perm.size() != size || phases.size() != size)
    throw input_error("core.gate", "perm/phase table size does not match gate dimensions");
  inv_perm.assign(perm.size(), UINT32_MAX);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv_perm[perm[i]] != UINT32_MAX)
      throw input_error("core.gate", "gate permutation is not a bijection");
    inv_perm[perm[i]] = static_cast<std::uint32_t>(i);
  }
}

MonomialOp MonomialOp::embedded(LocalMonomialGate gate, std::vector<std::uint32_t> sites) {
  if (sites.size() != gate.dims.size())
    throw input_error("core.op", "embedded site list does not match gate arity");
  std::set<std::uint32_t> uniq(sites.begin(), sites.end());
  if (uniq.size() != sites.size())
    throw input_error("core.op", "embedded site list has repeated sites");
  return MonomialOp(Embedded{std::move(gate), std::move(sites)});
}

MonomialOp MonomialOp::product(std::vector<MonomialOp> factors) {
  Product p;
  p.factors.reserve(factors.size());
  for (auto& f : factors) p.factors.push_back(std::make_shared<const MonomialOp>(std::move(f)));
  return MonomialOp(std::move(p));
}

MonomialOp MonomialOp::inverse(MonomialOp op) {
  return MonomialOp(Inverse{std::make_shared<const MonomialOp>(std::move(op))});
}

MonomialOp MonomialOp::diagonal_fn(std::function<Phase(const BasisVector&)> f, std::string desc,
                                   std::optional<FnSpec> spec) {
  if (!f) throw input_error("core.op", "diagonal_fn needs a callable");
  return MonomialOp(DiagonalFn{std::move(f), std::move(desc), std::move(spec)});
}

MonomialOp MonomialOp::permutation_fn(std::function<BasisVector(const BasisVector&)> fwd,
                                      std::function<BasisVector(const BasisVector&)> bwd,
                                      std::string desc, std::optional<FnSpec> spec) {
  if (!fwd || !bwd) throw input_error("core.op", "permutation_fn needs forward and backward callables");
  return MonomialOp(PermutationFn{std::move(fwd), std::move(bwd), std::move(desc), std::move(spec)});
}

namespace {

std::uint64_t local_index(const MonomialOp::Embedded& e, const BasisVector& x) {
  std::uint64_t loc = 0;
  for (std::size_t i = 0; i < e.sites.size(); ++i) {
    std::uint32_t s = e.sites[i];
    if (s >= x.size()) throw input_error("core.apply", "gate site index out of range");
    if (x[s] >= e.gate.dims[i])
      throw input_error("core.apply", "basis digit exceeds gate dimension at site " + std::to_string(s));
    loc = loc * e.gate.dims[i] + x[s];
  }
  return loc;
}

void write_local(const MonomialOp::Embedded& e, std::uint64_t loc, BasisVector& x) {
  for (std::size_t i = e.sites.size(); i-- > 0;) {
    x[e.sites[i]] = static_cast<std::uint32_t>(loc % e.gate.dims[i]);
    loc /= e.gate.dims[i];
  }
}

}  // namespace

std::pair<BasisVector, Phase> apply(const MonomialOp& op, const BasisVector& x) {
  using E = MonomialOp::Embedded;
  using P = MonomialOp::Product;
  using I = MonomialOp::Inverse;
  using D = MonomialOp::DiagonalFn;
  using F = MonomialOp::PermutationFn;
  const auto& n = op.node();
  if (const E* e = std::get_if<E>(&n)) {
    std::uint64_t loc = local_index(*e, x);
    BasisVector y = x;
    write_local(*e, e->gate.perm[loc], y);
    return {std::move(y), e->gate.phases[loc]};
  }
  if (const P* p = std::get_if<P>(&n)) {
    BasisVector cur = x;
    Phase acc = Phase::one();
    for (auto it = p->factors.rbegin(); it != p->factors.rend(); ++it) {
      auto [y, ph] = apply(**it, cur);
      cur = std::move(y);
      acc = acc * ph;
    }
    return {std::move(cur), acc};
  }
  if (const I* i = std::get_if<I>(&n)) return apply_inverse(*i->inner, x);
  if (const D* d = std::get_if<D>(&n)) return {x, d->phase(x)};
  const F& f = std::get<F>(n);
  BasisVector y = f.fwd(x);
  if (y.size() != x.size())
    throw internal_error("core.apply", "permutation_fn changed the number of sites");
  return {std::move(y), Phase::one()};
}

std::pair<BasisVector, Phase> apply_inverse(const MonomialOp& op, const BasisVector& y) {
  using E = MonomialOp::Embedded;
  using P = MonomialOp::Product;
  using I = MonomialOp::Inverse;
  using D = MonomialOp::DiagonalFn;
  using F = MonomialOp::PermutationFn;
  const auto& n = op.node();
  if (const E* e = std::get_if<E>(&n)) {
    std::uint64_t loc = local_index(*e, y);
    std::uint32_t src = e->gate.inv_perm[loc];
    BasisVector x = y;
    write_local(*e, src, x);
    return {std::move(x), e->gate.phases[src].conj()};
  }
  if (const P* p = std::get_if<P>(&n)) {
    BasisVector cur = y;
    Phase acc = Phase::one();
    for (const auto& f : p->factors) {
      auto [x, ph] = apply_inverse(*f, cur);
      cur = std::move(x);
      acc = acc * ph;
    }
    return {std::move(cur), acc};
  }
  if (const I* i = std::get_if<I>(&n)) return apply(*i->inner, y);
  if (const D* d = std::get_if<D>(&n)) return {y, d->phase(y).conj()};
  const F& f = std::get<F>(n);
  BasisVector x = f.bwd(y);
  if (x.size() != y.size())
    throw internal_error("core.apply", "permutation_fn changed the number of sites");
  return {std::move(x), Phase::one()};
}

BasisVector perm_action(const MonomialOp& op, const BasisVector& x) { return apply(op, x).first; }

BasisVector perm_action_inverse(const MonomialOp& op, const BasisVector& y) {
  return apply_inverse(op, y).first;
}

MonomialOp compose(std::vector<MonomialOp> ops) { return MonomialOp::product(std::move(ops)); }

MonomialOp invert(MonomialOp op) { return MonomialOp::inverse(std::move(op)); }

void validate_op(const MonomialOp& op, const SiteSpace& space) {
  using E = MonomialOp::Embedded;
  using P = MonomialOp::Product;
  using I = MonomialOp::Inverse;
  const auto& n = op.node();
  if (const E* e = std::get_if<E>(&n)) {
    for (std::size_t i = 0; i < e->sites.size(); ++i) {
      if (e->sites[i] >= space.num_sites())
        throw input_error("core.validate", "gate site " + std::to_string(e->sites[i]) +
                                               " out of range for a " +
                                               std::to_string(space.num_sites()) + "-site space");
      if (e->gate.dims[i] != space.dims[e->sites[i]])
        throw input_error("core.validate",
                          "gate dimension " + std::to_string(e->gate.dims[i]) +
                              " does not match site " + std::to_string(e->sites[i]) +
                              " dimension " + std::to_string(space.dims[e->sites[i]]));
    }
    return;
  }
  if (const P* p = std::get_if<P>(&n)) {
    for (const auto& f : p->factors) validate_op(*f, space);
    return;
  }
  if (const I* i = std::get_if<I>(&n)) {
    validate_op(*i->inner, space);
    return;
  }
  // Function-backed nodes: nothing structural to check.
}

GeneratorSet::GeneratorSet(SiteSpace space, std::vector<std::pair<std::string, MonomialOp>> gens)
    : space_(std::move(space)) {
  std::set<std::string> seen;
  for (auto& [name, op] : gens) {
    if (name.empty()) throw input_error("core.generators", "generator name must be nonempty");
    if (!seen.insert(name).second)
      throw input_error("core.generators", "duplicate generator name '" + name + "'");
    validate_op(op, space_);
    names_.push_back(name);
    ops_.push_back(std::make_shared<const MonomialOp>(std::move(op)));
  }
}

std::optional<std::size_t> GeneratorSet::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::pair<BasisVector, Phase> word_apply(const GeneratorSet& gens, const Word& w,
                                         const BasisVector& x) {
  BasisVector cur = x;
  Phase acc = Phase::one();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->gen >= gens.size()) throw input_error("core.word", "word letter names unknown generator");
    if (it->exp != 1 && it->exp != -1)
      throw input_error("core.word", "word exponents must be +1 or -1");
    auto [y, ph] = it->exp == 1 ? apply(gens.op(it->gen), cur) : apply_inverse(gens.op(it->gen), cur);
    cur = std::move(y);
    acc = acc * ph;
  }
  return {std::move(cur), acc};
}

std::string word_str(const GeneratorSet& gens, const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << "*";
    os << gens.name(w[i].gen);
    if (w[i].exp == -1) os << "^-1";
  }
  return os.str();
}

}  // namespace msf
