#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "msf/errors.hpp"
#include "msf/families.hpp"
#include "msf/orbit.hpp"

using namespace msf;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t num_gens, std::size_t len) {
  Word w(len);
  for (auto& l : w) {
    l.gen = std::uint32_t(rng() % num_gens);
    l.exp = (rng() % 2) ? 1 : -1;
  }
  return w;
}

}  // namespace

TEST_CASE("breadth-first orbit order is deterministic") {
  Family w = build_w(4);
  SchreierTree tree = orbit_bfs(w.gens, BasisVector::parse("1000"), 1000);
  REQUIRE(tree.size() == 4);
  CHECK(tree.members[0] == BasisVector::parse("1000"));
  CHECK(tree.members[1] == BasisVector::parse("0100"));
  CHECK(tree.members[2] == BasisVector::parse("0010"));
  CHECK(tree.members[3] == BasisVector::parse("0001"));
  CHECK(!tree.truncated);
  CHECK(tree.contains(BasisVector::parse("0010")));
  CHECK(!tree.contains(BasisVector::parse("1100")));
  CHECK(tree.index_of(BasisVector::parse("0001")).value() == 3);
  // running it again gives the identical member sequence
  SchreierTree again = orbit_bfs(w.gens, BasisVector::parse("1000"), 1000);
  CHECK(again.members == tree.members);
}

TEST_CASE("transversal words reach each member with the recorded phase") {
  Family aklt = build_aklt(4, false);
  SchreierTree tree = orbit_bfs(aklt.gens, BasisVector::parse("0012"), 10000);
  REQUIRE(tree.size() == 20);
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    Word w = transversal_word(tree, i);
    auto [y, p] = word_apply(aklt.gens, w, tree.root);
    CHECK(y == tree.members[i]);
    CHECK(p.same_phase(transversal_phase(tree, aklt.gens, i)));
  }
  // the signed swap into 0021 carries a minus sign
  auto idx = tree.index_of(BasisVector::parse("0021"));
  REQUIRE(idx.has_value());
  CHECK(transversal_phase(tree, aklt.gens, *idx).same_phase(Phase::minus_one()));
  CHECK(transversal_word(tree, 0).empty());
}

TEST_CASE("schreier words all fix the root") {
  Family w = build_w(4);
  SchreierTree tree = orbit_bfs(w.gens, BasisVector::parse("1000"), 1000);
  std::size_t count = 0;
  schreier_generator_words(tree, w.gens, [&](const Word& word) {
    auto [y, p] = word_apply(w.gens, word, tree.root);
    CHECK(y == tree.root);
    ++count;
    return true;
  });
  // one word per (member, generator, direction)
  CHECK(count == tree.size() * w.gens.size() * 2);
  // early stop is honored
  std::size_t seen = 0;
  schreier_generator_words(tree, w.gens, [&](const Word&) { return ++seen < 3; });
  CHECK(seen == 3);
}

TEST_CASE("support decisions with exact witnesses on the excited ladder") {
  Family w = build_w(4);  // weight-1 target: only that orbit is supported

  SchreierTree zero = orbit_bfs(w.gens, BasisVector::parse("0000"), 1000);
  SupportVerdict v0 = support_test(zero, w.gens);
  CHECK(!v0.in_support);
  REQUIRE(v0.witness.has_value());
  // the diagonal generator alone witnesses exclusion with phase -i
  CHECK(v0.witness->second.same_phase(Phase::root_of_unity(3, 4)));
  auto [wy, wp] = word_apply(w.gens, v0.witness->first, zero.root);
  CHECK(wy == zero.root);
  CHECK(wp.same_phase(v0.witness->second));

  SchreierTree two = orbit_bfs(w.gens, BasisVector::parse("0011"), 1000);
  CHECK(two.size() == 6);
  SupportVerdict v2 = support_test(two, w.gens);
  CHECK(!v2.in_support);
  REQUIRE(v2.witness.has_value());
  CHECK(v2.witness->second.same_phase(Phase::imag_unit()));

  SchreierTree one = orbit_bfs(w.gens, BasisVector::parse("1000"), 1000);
  SupportVerdict v1 = support_test(one, w.gens);
  CHECK(v1.in_support);
  CHECK(!v1.witness.has_value());
}

TEST_CASE("orbit state: root coefficient one, uniform modulus, flat phases on the symmetric state") {
  Family w = build_w(4);
  auto tree = std::make_shared<SchreierTree>(orbit_bfs(w.gens, BasisVector::parse("1000"), 1000));
  OrbitState st = orbit_state(tree, w.gens);
  CHECK(st.size() == 4);
  CHECK(st.norm == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.xi[0].is_one());
  for (const auto& x : st.xi) CHECK(x.is_one());
}

TEST_CASE("any word that maps root to y reproduces the recorded relative phase") {
  Family aklt = build_aklt(4, false);
  auto tree = std::make_shared<SchreierTree>(
      orbit_bfs(aklt.gens, BasisVector::parse("0000"), 10000));
  REQUIRE(tree->size() == 21);
  OrbitState st = orbit_state(tree, aklt.gens);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Word w = random_word(rng, aklt.gens.size(), 1 + rng() % 12);
    auto [y, p] = word_apply(aklt.gens, w, tree->root);
    auto idx = tree->index_of(y);
    REQUIRE(idx.has_value());
    CHECK(p.same_phase(st.xi[*idx]));
  }
}

TEST_CASE("random words leave the orbit state invariant amplitude by amplitude") {
  Family aklt = build_aklt(4, false);
  auto tree = std::make_shared<SchreierTree>(
      orbit_bfs(aklt.gens, BasisVector::parse("0000"), 10000));
  OrbitState st = orbit_state(tree, aklt.gens);
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    Word w = random_word(rng, aklt.gens.size(), 1 + rng() % 8);
    std::uint32_t i = std::uint32_t(rng() % tree->size());
    auto [y, p] = word_apply(aklt.gens, w, tree->members[i]);
    auto j = tree->index_of(y);
    REQUIRE(j.has_value());
    // coefficient transport: xi(y) = phase * xi(start)
    CHECK(st.xi[*j].same_phase(p * st.xi[i]));
  }
}

TEST_CASE("spin-chain orbits partition the basis with the expected sizes") {
  Family aklt = build_aklt(4, false);
  auto reports = orbit_basis_exhaustive(aklt.gens, 10000);
  REQUIRE(reports.size() == 4);
  std::multiset<std::uint64_t> sizes;
  std::uint64_t total = 0;
  std::set<BasisVector> seen;
  for (const auto& r : reports) {
    sizes.insert(r.tree->size());
    total += r.tree->size();
    for (const auto& m : r.tree->members) CHECK(seen.insert(m).second);
    CHECK(r.verdict == Verdict::Supported);
    REQUIRE(r.state.has_value());
  }
  CHECK(total == 81);
  CHECK(sizes == std::multiset<std::uint64_t>{20, 20, 20, 21});
  // reports come back ordered by minimal orbit element, which is also the root
  for (std::size_t i = 1; i < reports.size(); ++i)
    CHECK(reports[i - 1].tree->root < reports[i].tree->root);
  for (const auto& r : reports)
    CHECK(*std::min_element(r.tree->members.begin(), r.tree->members.end()) == r.tree->root);
}

TEST_CASE("six-site spin chain orbit sizes") {
  Family aklt = build_aklt(6, false);
  auto reports = orbit_basis_exhaustive(aklt.gens, 10000);
  REQUIRE(reports.size() == 4);
  std::multiset<std::uint64_t> sizes;
  for (const auto& r : reports) sizes.insert(r.tree->size());
  CHECK(sizes == std::multiset<std::uint64_t>{182, 182, 182, 183});
}

TEST_CASE("seeded orbit reports merge duplicate seeds") {
  Family w = build_w(4);
  std::vector<BasisVector> seeds{BasisVector::parse("1000"), BasisVector::parse("0001"),
                                 BasisVector::parse("0000")};
  auto reports = orbit_basis(w.gens, seeds, 1000);
  REQUIRE(reports.size() == 2);  // two distinct orbits
  CHECK(reports[0].tree->root == BasisVector::parse("0000"));
  // the weight-one orbit keeps its seed as root but sorts by its minimal member
  CHECK(reports[1].tree->root == BasisVector::parse("1000"));
  CHECK(reports[1].tree->contains(BasisVector::parse("0001")));
  CHECK(reports[0].verdict == Verdict::Excluded);
  CHECK(reports[1].verdict == Verdict::Supported);
}

TEST_CASE("orbit caps truncate trees and make verdicts inconclusive") {
  Family aklt = build_aklt(4, false);
  SchreierTree tree = orbit_bfs(aklt.gens, BasisVector::parse("0000"), 5);
  CHECK(tree.truncated);
  CHECK(tree.size() <= 5);
  CHECK_THROWS_AS(
      schreier_generator_words(tree, aklt.gens, [](const Word&) { return true; }),
      refused_error);
  CHECK_THROWS_AS(support_test(tree, aklt.gens), refused_error);
  auto reports = orbit_basis(aklt.gens, {BasisVector::parse("0000")}, 5);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == Verdict::Inconclusive);
  CHECK(!reports[0].state.has_value());
}

TEST_CASE("word text form lists letters as applied right to left") {
  Family w = build_w(4);
  Word word{{3, 1}, {0, -1}};
  std::string s = word_str(w.gens, word);
  CHECK(s.find("T") != std::string::npos);
  CHECK(s.find("S1") != std::string::npos);
}
