#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "msf/monomial_op.hpp"

namespace msf {

struct AnalysisCaps {
  std::uint64_t orbit_cap = 1000000;
  std::uint64_t dense_cap = 4096;
  std::uint64_t group_cap = 100000;
};

// Breadth-first orbit of a root under the generator permutation actions, with one
// back-pointer per member. Storing the tree instead of transversal words keeps memory
// at O(|orbit|) while every transversal word stays reconstructible on demand.
struct SchreierTree {
  struct Edge {
    std::uint32_t parent;
    std::uint32_t gen;
    int exp;  // +1 or -1
  };

  BasisVector root;
  std::vector<BasisVector> members;  // BFS order; members[0] == root
  std::unordered_map<BasisVector, std::uint32_t, BvHash> index;
  std::vector<Edge> edges;  // edges[i] leads into members[i]; edges[0] unused
  bool truncated = false;

  std::uint64_t size() const { return members.size(); }
  bool contains(const BasisVector& y) const { return index.count(y) != 0; }
  std::optional<std::uint32_t> index_of(const BasisVector& y) const;
};

// Deterministic member order: by BFS layer, then generator index (inverse after the
// forward action), then lexicographic tie-break on the discovered vector.
SchreierTree orbit_bfs(const GeneratorSet& gens, const BasisVector& root, std::uint64_t orbit_cap);

// Tree path root -> members[idx], as a word over the generators.
Word transversal_word(const SchreierTree& tree, std::uint32_t idx);
// Phase accumulated by evaluating that word on the root.
Phase transversal_phase(const SchreierTree& tree, const GeneratorSet& gens, std::uint32_t idx);

// Streams the words t_{g.y}^-1 * g * t_y for every member y and every generator g and
// its inverse; each evaluates to an operator fixing the root. The callback returns
// false to stop early. Refuses truncated trees.
void schreier_generator_words(const SchreierTree& tree, const GeneratorSet& gens,
                              const std::function<bool(const Word&)>& fn);

struct SupportVerdict {
  bool in_support = false;
  // First root-fixing word whose phase is not 1, with that phase.
  std::optional<std::pair<Word, Phase>> witness;
};

// Decides root-support by evaluating every streamed root-fixing word on the root.
// Exact phases decide exactly; floating phases within 1e-9 of 1 count as 1, and a
// phase in (1e-9, 1e-6) raises precision_error rather than guessing.
SupportVerdict support_test(const SchreierTree& tree, const GeneratorSet& gens);

// Orbit state over a supported root: amplitudes xi(y)/sqrt(|orbit|), xi(root) = 1,
// xi accumulated along tree paths.
struct OrbitState {
  std::shared_ptr<const SchreierTree> tree;
  std::vector<Phase> xi;  // aligned with tree->members
  double norm = 0.0;      // 1/sqrt(|orbit|)

  std::uint64_t size() const { return tree->size(); }
};

OrbitState orbit_state(std::shared_ptr<const SchreierTree> tree, const GeneratorSet& gens);

enum class Verdict { Supported, Excluded, Inconclusive };

struct OrbitReport {
  std::shared_ptr<const SchreierTree> tree;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::pair<Word, Phase>> witness;
  std::optional<OrbitState> state;  // present iff supported
};

// One report per distinct orbit seeded by the given vectors; truncated orbits come
// back Inconclusive. Output ordered by minimal orbit element.
std::vector<OrbitReport> orbit_basis(const GeneratorSet& gens, const std::vector<BasisVector>& seeds,
                                     std::uint64_t orbit_cap);
// Partitions the whole basis into orbits. Requires total_dim <= orbit_cap.
std::vector<OrbitReport> orbit_basis_exhaustive(const GeneratorSet& gens, std::uint64_t orbit_cap);

}  // namespace msf
