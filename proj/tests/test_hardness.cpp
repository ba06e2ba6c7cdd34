#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "msf/cnf.hpp"
#include "msf/errors.hpp"

using namespace msf;

namespace {

CnfFormula parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

bool violated(const CnfClause& c, const std::vector<int>& assign) {
  for (auto lit : c.lits) {
    int v = assign[std::size_t(std::abs(lit)) - 1];
    if ((lit > 0 && v == 1) || (lit < 0 && v == 0)) return false;
  }
  return true;
}

std::uint64_t brute_count(const CnfFormula& f) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (1ull << f.num_vars); ++m) {
    std::vector<int> assign(f.num_vars);
    for (std::uint32_t i = 0; i < f.num_vars; ++i)
      assign[i] = int((m >> (f.num_vars - 1 - i)) & 1);
    bool sat = true;
    for (const auto& c : f.clauses)
      if (violated(c, assign)) sat = false;
    if (sat) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("reader handles comments, the problem line, and terminators") {
  CnfFormula f = parse(
      "c a comment\n"
      "p cnf 3 2\n"
      "1 -2 0\n"
      "2 3 0\n");
  CHECK(f.num_vars == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0].lits == std::vector<std::int32_t>{1, -2});
  CHECK(f.clauses[1].lits == std::vector<std::int32_t>{2, 3});

  // clause split across lines, '%' footer tolerated
  CnfFormula g = parse("p cnf 2 1\n1\n-2 0\n%\n0\n");
  REQUIRE(g.clauses.size() == 1);
  CHECK(g.clauses[0].lits == std::vector<std::int32_t>{1, -2});
}

TEST_CASE("reader rejects malformed input with line numbers") {
  auto check_throws_with_line = [](const std::string& text, const std::string& frag) {
    try {
      parse(text);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find(frag) != std::string::npos);
    }
  };
  check_throws_with_line("1 2 0\n", "problem line");             // clause before p
  check_throws_with_line("p cnf 2 1\np cnf 2 1\n1 0\n", "problem line");
  check_throws_with_line("p cnf 0 1\n1 0\n", "variable");
  check_throws_with_line("p cnf 2 1\n3 0\n", "outside");
  check_throws_with_line("p cnf 2 1\n1 x 0\n", "unreadable");
  check_throws_with_line("p cnf 2 1\n0\n", "empty clause");
  check_throws_with_line("p cnf 4 1\n1 2 3 4 0\n", "3 literals");
  check_throws_with_line("p cnf 2 2\n1 0\n", "declares");
  check_throws_with_line("p cnf 2 1\n1 0\n2 0\n", "declares");
  check_throws_with_line("p cnf 2 1\n1\n", "0-terminated");
  CHECK_THROWS_AS(parse_dimacs_file("missing_file.cnf"), input_error);
}

TEST_CASE("clause operators carry -1 exactly on violating assignments") {
  CnfFormula f = parse("p cnf 3 1\n1 -3 0\n");
  SiteSpace sp = qubits(3);
  MonomialOp op = clause_to_op(f.clauses[0], sp);
  for (std::uint64_t m = 0; m < 8; ++m) {
    BasisVector x = sp.from_flat(m);
    auto [y, p] = apply(op, x);
    CHECK(y == x);
    std::vector<int> assign{int(x.v[0]), int(x.v[1]), int(x.v[2])};
    bool bad = violated(f.clauses[0], assign);
    CHECK(p.same_phase(bad ? Phase::minus_one() : Phase::one()));
  }
  CHECK_THROWS_AS(clause_to_op(CnfClause{}, sp), input_error);
}

TEST_CASE("formula generators: one diagonal per clause, named in order") {
  CnfFormula f = parse("p cnf 3 2\n1 -2 0\n2 3 0\n");
  GeneratorSet gens = cnf_generators(f);
  CHECK(gens.size() == 2);
  CHECK(gens.name(0) == "C1");
  CHECK(gens.name(1) == "C2");
  CHECK(gens.space().total_dim == 8);
  // formula with no clauses: everything satisfies
  CnfFormula empty;
  empty.num_vars = 2;
  CnfVerdict v = solve_cnf(empty);
  CHECK(v.satisfiable);
  CHECK(v.dimension == 4);
}

TEST_CASE("single wide clause: seven satisfying assignments, first is 001") {
  CnfVerdict v = solve_cnf(parse("p cnf 3 1\n1 2 3 0\n"));
  CHECK(v.satisfiable);
  CHECK(v.dimension == 7);
  REQUIRE(!v.satisfying.empty());
  CHECK(v.satisfying.front() == BasisVector::parse("001"));
  // lexicographic order throughout
  for (std::size_t i = 1; i < v.satisfying.size(); ++i)
    CHECK(v.satisfying[i - 1] < v.satisfying[i]);
}

TEST_CASE("contradiction has empty support") {
  CnfVerdict v = solve_cnf(parse("p cnf 1 2\n1 0\n-1 0\n"));
  CHECK(!v.satisfiable);
  CHECK(v.dimension == 0);
  CHECK(v.satisfying.empty());
}

TEST_CASE("forced assignment: unit clauses pin 101") {
  CnfVerdict v = solve_cnf(parse("p cnf 3 3\n1 0\n-2 0\n3 0\n"));
  CHECK(v.satisfiable);
  CHECK(v.dimension == 1);
  REQUIRE(v.satisfying.size() == 1);
  CHECK(v.satisfying[0] == BasisVector::parse("101"));
}

TEST_CASE("random formulas agree with brute-force counting") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 30; ++trial) {
    CnfFormula f;
    f.num_vars = 3 + rng() % 6;  // 3..8
    std::size_t m = 1 + rng() % (2 * f.num_vars);
    for (std::size_t ci = 0; ci < m; ++ci) {
      CnfClause c;
      std::size_t width = 1 + rng() % 3;
      std::vector<std::uint32_t> vars;
      while (vars.size() < width) {
        std::uint32_t v = 1 + std::uint32_t(rng() % f.num_vars);
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      for (auto v : vars) c.lits.push_back((rng() % 2) ? std::int32_t(v) : -std::int32_t(v));
      f.clauses.push_back(std::move(c));
    }
    CnfVerdict v = solve_cnf(f);
    CHECK(v.dimension == brute_count(f));
    CHECK(v.satisfiable == (v.dimension > 0));
    // each reported assignment satisfies every clause
    for (const auto& a : v.satisfying) {
      std::vector<int> assign;
      for (auto d : a.v) assign.push_back(int(d));
      for (const auto& c : f.clauses) CHECK(!violated(c, assign));
    }
  }
}

TEST_CASE("exhaustion cap refuses instead of guessing") {
  CnfFormula f = parse("p cnf 3 1\n1 2 3 0\n");
  try {
    solve_cnf(f, 4);
    FAIL_CHECK("expected a refusal below 2^3 assignments");
  } catch (const refused_error& e) {
    // the refusal explains that deciding support here decides satisfiability
    CHECK(std::string(e.what()).find("3-SAT") != std::string::npos);
  }
}
