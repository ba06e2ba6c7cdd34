#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "msf/phase.hpp"
#include "msf/site_space.hpp"

namespace msf {

// A k-site monomial gate: |loc> -> phases[loc] * |perm[loc]>, where loc is the flat
// local index (first listed site most significant). perm must be a bijection.
struct LocalMonomialGate {
  std::vector<std::uint32_t> dims;
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> inv_perm;  // derived at construction
  std::vector<Phase> phases;            // picked up at the source index

  LocalMonomialGate(std::vector<std::uint32_t> dims_, std::vector<std::uint32_t> perm_,
                    std::vector<Phase> phases_);
  std::uint64_t table_size() const { return perm.size(); }
};

class MonomialOp;
using OpPtr = std::shared_ptr<const MonomialOp>;

// Named recipe for rebuilding a function-backed operator from a spec file.
// params_json holds the constructor parameters as serialized JSON.
struct FnSpec {
  std::string ctor;
  std::string params_json;
};

// Monomial operators are computable actions, never materialized matrices. The five
// shapes cover embedded local gates, composition, formal inverses, and function-backed
// diagonal / permutation actions for operators whose action is cheap to compute but
// whose matrix is not (circuit conjugations, user phase functions).
class MonomialOp {
public:
  struct Embedded {
    LocalMonomialGate gate;
    std::vector<std::uint32_t> sites;
  };
  struct Product {
    std::vector<OpPtr> factors;  // factors.front() is applied last
  };
  struct Inverse {
    OpPtr inner;
  };
  struct DiagonalFn {
    std::function<Phase(const BasisVector&)> phase;
    std::string desc;
    std::optional<FnSpec> spec;
  };
  struct PermutationFn {
    std::function<BasisVector(const BasisVector&)> fwd;
    std::function<BasisVector(const BasisVector&)> bwd;
    std::string desc;
    std::optional<FnSpec> spec;
  };
  using Node = std::variant<Embedded, Product, Inverse, DiagonalFn, PermutationFn>;

  static MonomialOp embedded(LocalMonomialGate gate, std::vector<std::uint32_t> sites);
  static MonomialOp product(std::vector<MonomialOp> factors);
  static MonomialOp inverse(MonomialOp op);
  static MonomialOp diagonal_fn(std::function<Phase(const BasisVector&)> f, std::string desc,
                                std::optional<FnSpec> spec = std::nullopt);
  static MonomialOp permutation_fn(std::function<BasisVector(const BasisVector&)> fwd,
                                   std::function<BasisVector(const BasisVector&)> bwd,
                                   std::string desc, std::optional<FnSpec> spec = std::nullopt);

  const Node& node() const { return node_; }

private:
  explicit MonomialOp(Node n) : node_(std::move(n)) {}
  Node node_;
};

// U|x> = phase * |image>. Throws input_error on site/dimension mismatches.
std::pair<BasisVector, Phase> apply(const MonomialOp& op, const BasisVector& x);
// Inverse action with conjugated phase: if apply(op,x) == (y,p) then
// apply_inverse(op,y) == (x, conj(p)).
std::pair<BasisVector, Phase> apply_inverse(const MonomialOp& op, const BasisVector& y);
// Permutation part only.
BasisVector perm_action(const MonomialOp& op, const BasisVector& x);
BasisVector perm_action_inverse(const MonomialOp& op, const BasisVector& y);

// compose({A,B}) applies B first, then A.
MonomialOp compose(std::vector<MonomialOp> ops);
MonomialOp invert(MonomialOp op);

// Structural validation against a space: embedded sites in range and distinct, gate
// dims matching the site dims, recursively. Function-backed nodes are trusted here
// and checked at application time.
void validate_op(const MonomialOp& op, const SiteSpace& space);

struct WordLetter {
  std::uint32_t gen;
  int exp;  // +1 or -1
  bool operator==(const WordLetter&) const = default;
};
using Word = std::vector<WordLetter>;

// Named generators over a common space. Names are unique and nonempty.
class GeneratorSet {
public:
  GeneratorSet(SiteSpace space, std::vector<std::pair<std::string, MonomialOp>> gens);

  const SiteSpace& space() const { return space_; }
  std::size_t size() const { return ops_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const MonomialOp& op(std::size_t i) const { return *ops_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

private:
  SiteSpace space_;
  std::vector<std::string> names_;
  std::vector<OpPtr> ops_;
};

// Evaluates the word letter by letter (rightmost letter applied first), without
// building intermediate Product nodes.
std::pair<BasisVector, Phase> word_apply(const GeneratorSet& gens, const Word& w,
                                         const BasisVector& x);
std::string word_str(const GeneratorSet& gens, const Word& w);

}  // namespace msf
