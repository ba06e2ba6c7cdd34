#include "msf/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "msf/errors.hpp"

namespace msf {

std::optional<std::uint32_t> SchreierTree::index_of(const BasisVector& y) const {
  auto it = index.find(y);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

SchreierTree orbit_bfs(const GeneratorSet& gens, const BasisVector& root, std::uint64_t orbit_cap) {
  if (!gens.space().contains(root))
    throw input_error("group.orbit", "root " + root.str() + " is not in the generator space");
  SchreierTree tree;
  tree.root = root;
  tree.members.push_back(root);
  tree.index.emplace(root, 0);
  tree.edges.push_back({0, 0, 0});

  // Candidate discovered while expanding a layer; ordering key (gen, exp, vector, parent).
  struct Cand {
    std::uint32_t gen;
    int exp_rank;  // 0 = forward, 1 = inverse
    BasisVector y;
    std::uint32_t parent;
  };

  std::vector<std::uint32_t> layer{0};
  while (!layer.empty()) {
    std::vector<Cand> cands;
    for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
      for (int er = 0; er < 2; ++er) {
        for (std::uint32_t p : layer) {
          BasisVector y = er == 0 ? perm_action(gens.op(gi), tree.members[p])
                                  : perm_action_inverse(gens.op(gi), tree.members[p]);
          if (!tree.index.count(y)) cands.push_back({gi, er, std::move(y), p});
        }
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return std::tie(a.gen, a.exp_rank, a.y, a.parent) < std::tie(b.gen, b.exp_rank, b.y, b.parent);
    });
    std::vector<std::uint32_t> next;
    for (auto& c : cands) {
      if (tree.index.count(c.y)) continue;  // duplicate within this layer: first key wins
      if (tree.members.size() >= orbit_cap) {
        tree.truncated = true;
        return tree;
      }
      std::uint32_t idx = static_cast<std::uint32_t>(tree.members.size());
      tree.index.emplace(c.y, idx);
      tree.members.push_back(std::move(c.y));
      tree.edges.push_back({c.parent, c.gen, c.exp_rank == 0 ? 1 : -1});
      next.push_back(idx);
    }
    layer = std::move(next);
  }
  return tree;
}

Word transversal_word(const SchreierTree& tree, std::uint32_t idx) {
  if (idx >= tree.members.size()) throw input_error("group.transversal", "member index out of range");
  Word w;
  while (idx != 0) {
    const auto& e = tree.edges[idx];
    w.push_back({e.gen, e.exp});
    idx = e.parent;
  }
  // Letters were collected child-up; the word applies rightmost first, so this order
  // (deepest edge leftmost) already evaluates root -> member.
  return w;
}

Phase transversal_phase(const SchreierTree& tree, const GeneratorSet& gens, std::uint32_t idx) {
  auto [y, ph] = word_apply(gens, transversal_word(tree, idx), tree.root);
  if (!(y == tree.members.at(idx)))
    throw internal_error("group.transversal", "transversal word does not reach its member");
  return ph;
}

void schreier_generator_words(const SchreierTree& tree, const GeneratorSet& gens,
                              const std::function<bool(const Word&)>& fn) {
  if (tree.truncated)
    throw refused_error("group.schreier", "orbit truncated at cap; refusing to analyze it");
  std::vector<Word> transversals(tree.members.size());
  for (std::uint32_t i = 0; i < tree.members.size(); ++i) transversals[i] = transversal_word(tree, i);
  for (std::uint32_t i = 0; i < tree.members.size(); ++i) {
    for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
      for (int exp : {1, -1}) {
        BasisVector z = exp == 1 ? perm_action(gens.op(gi), tree.members[i])
                                 : perm_action_inverse(gens.op(gi), tree.members[i]);
        auto zi = tree.index_of(z);
        if (!zi)
          throw internal_error("group.schreier", "generator action left the enumerated orbit");
        Word w;
        const Word& tz = transversals[*zi];
        for (auto it = tz.rbegin(); it != tz.rend(); ++it) w.push_back({it->gen, -it->exp});
        w.push_back({gi, exp});
        const Word& ty = transversals[i];
        w.insert(w.end(), ty.begin(), ty.end());
        if (!fn(w)) return;
      }
    }
  }
}

SupportVerdict support_test(const SchreierTree& tree, const GeneratorSet& gens) {
  if (tree.truncated)
    throw refused_error("group.support_test", "orbit truncated at cap; verdict would be unreliable");
  SupportVerdict verdict;
  verdict.in_support = true;
  schreier_generator_words(tree, gens, [&](const Word& w) {
    auto [y, ph] = word_apply(gens, w, tree.root);
    if (!(y == tree.root))
      throw internal_error("group.support_test", "stabilizer word moved the root");
    if (ph.exact()) {
      if (ph.is_one()) return true;
    } else {
      double d = ph.dist_to_one();
      if (d <= 1e-9) return true;
      if (d < 1e-6)
        throw precision_error("group.support_test",
                              "floating phase at distance " + std::to_string(d) +
                                  " from 1 is too ambiguous to decide support");
    }
    verdict.in_support = false;
    verdict.witness = std::make_pair(w, ph);
    return false;
  });
  return verdict;
}

OrbitState orbit_state(std::shared_ptr<const SchreierTree> tree, const GeneratorSet& gens) {
  if (!tree) throw input_error("group.orbit_state", "null tree");
  if (tree->truncated)
    throw refused_error("group.orbit_state", "orbit truncated at cap; no state for it");
  OrbitState st;
  st.tree = tree;
  st.norm = 1.0 / std::sqrt(static_cast<double>(tree->size()));
  st.xi.resize(tree->members.size());
  st.xi[0] = Phase::one();
  // BFS order guarantees parents precede children, so one gate application per member.
  for (std::uint32_t i = 1; i < tree->members.size(); ++i) {
    const auto& e = tree->edges[i];
    const BasisVector& parent = tree->members[e.parent];
    auto [y, ph] = e.exp == 1 ? apply(gens.op(e.gen), parent) : apply_inverse(gens.op(e.gen), parent);
    if (!(y == tree->members[i]))
      throw internal_error("group.orbit_state", "tree edge does not reproduce its member");
    st.xi[i] = ph * st.xi[e.parent];
  }
  return st;
}

namespace {

OrbitReport analyze_orbit(const GeneratorSet& gens, std::shared_ptr<const SchreierTree> tree) {
  OrbitReport rep;
  rep.tree = tree;
  if (tree->truncated) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  SupportVerdict v = support_test(*tree, gens);
  if (v.in_support) {
    rep.verdict = Verdict::Supported;
    rep.state = orbit_state(tree, gens);
  } else {
    rep.verdict = Verdict::Excluded;
    rep.witness = v.witness;
  }
  return rep;
}

void sort_reports(std::vector<OrbitReport>& reports) {
  auto min_member = [](const OrbitReport& r) {
    return *std::min_element(r.tree->members.begin(), r.tree->members.end());
  };
  std::sort(reports.begin(), reports.end(),
            [&](const OrbitReport& a, const OrbitReport& b) { return min_member(a) < min_member(b); });
}

}  // namespace

std::vector<OrbitReport> orbit_basis(const GeneratorSet& gens, const std::vector<BasisVector>& seeds,
                                     std::uint64_t orbit_cap) {
  std::vector<OrbitReport> reports;
  for (const auto& seed : seeds) {
    bool seen = false;
    for (const auto& r : reports)
      if (r.tree->contains(seed)) {
        seen = true;
        break;
      }
    if (seen) continue;
    auto tree = std::make_shared<const SchreierTree>(orbit_bfs(gens, seed, orbit_cap));
    reports.push_back(analyze_orbit(gens, tree));
  }
  sort_reports(reports);
  return reports;
}

std::vector<OrbitReport> orbit_basis_exhaustive(const GeneratorSet& gens, std::uint64_t orbit_cap) {
  const SiteSpace& space = gens.space();
  if (space.huge || space.total_dim > orbit_cap)
    throw refused_error("group.orbit_basis",
                        "space too large to partition exhaustively; provide seeds instead");
  std::vector<OrbitReport> reports;
  std::vector<bool> visited(space.total_dim, false);
  for (std::uint64_t f = 0; f < space.total_dim; ++f) {
    if (visited[f]) continue;
    auto tree = std::make_shared<const SchreierTree>(orbit_bfs(gens, space.from_flat(f), orbit_cap));
    for (const auto& m : tree->members) visited[space.flat_index(m)] = true;
    reports.push_back(analyze_orbit(gens, tree));
  }
  sort_reports(reports);
  return reports;
}

}  // namespace msf
