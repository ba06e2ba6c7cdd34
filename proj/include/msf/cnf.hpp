#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "msf/monomial_op.hpp"
#include "msf/orbit.hpp"

namespace msf {

struct CnfClause {
  std::vector<std::int32_t> lits;  // +v / -v, 1-based
};

struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<CnfClause> clauses;
};

// DIMACS reader: 'c' comments, one 'p cnf <vars> <clauses>' line, clauses as
// 0-terminated literal runs. Errors carry the 1-based line number. Clauses are
// capped at 3 literals and must be nonempty.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_file(const std::string& path);

// Diagonal operator on the clause's variable sites, phase -1 exactly on the
// assignments violating the clause. The clause must be nonempty.
MonomialOp clause_to_op(const CnfClause& clause, const SiteSpace& space);

// One diagonal generator per clause over one qubit site per variable: every basis
// state is a singleton orbit, and an assignment is supported exactly when it
// satisfies the formula, so satisfiability is the support decision.
GeneratorSet cnf_generators(const CnfFormula& f);

struct CnfVerdict {
  bool satisfiable = false;
  std::uint64_t dimension = 0;          // number of satisfying assignments
  std::vector<BasisVector> satisfying;  // all of them, in lexicographic order
};

// Runs the singleton-orbit support test over every assignment; needs 2^num_vars
// within the cap (the refusal notes why no shortcut exists).
CnfVerdict solve_cnf(const CnfFormula& f, std::uint64_t orbit_cap = AnalysisCaps{}.orbit_cap);

}  // namespace msf
