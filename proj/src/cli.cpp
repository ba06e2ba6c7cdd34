#include "msf/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "msf/cnf.hpp"
#include "msf/errors.hpp"
#include "msf/families.hpp"
#include "msf/oracle.hpp"
#include "msf/orbit.hpp"
#include "msf/sim.hpp"
#include "msf/spec_io.hpp"

namespace msf {

namespace {

using nlohmann::json;

struct Options {
  std::string gen_path;
  std::string out_path;
  std::string in_path;
  bool pretty = false;
  std::vector<std::string> roots;
  bool exhaustive = false;
  AnalysisCaps caps;

  // family parameters (used by the family subcommand and the inline --family form)
  std::string family_name;
  std::uint32_t n = 0, k = 0;
  std::string bc = "open";
  std::string stabilizers, group_name, lattice_name, fn_name, circuit_path, circuit_json;
  std::vector<std::uint32_t> factors;
  std::vector<std::string> hgen_texts;
  std::string rep_text;

  // sampling and estimation
  std::string pauli_text;
  std::vector<std::uint32_t> local_sites;
  std::string local_matrix;
  double eps = 0.05, delta = 0.05;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool exact = false;
  std::uint64_t count = 1;
  std::uint64_t max_members = 100000;
  std::string method = "index";
  std::uint64_t word_len = 64;
};

void emit(const json& j, const Options& opt, std::ostream& out) {
  std::string text = opt.pretty ? j.dump(2) : canonical_dump(j);
  if (opt.out_path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw input_error("cli.out", "cannot open '" + opt.out_path + "' for writing");
  f << text << "\n";
  if (!f) throw input_error("cli.out", "write failure on '" + opt.out_path + "'");
}

std::vector<std::uint32_t> parse_tuple(const std::string& text, const std::string& what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw input_error("cli.family", what + ": '" + item + "' is not a nonnegative integer");
    }
  }
  if (out.empty()) throw input_error("cli.family", what + " is empty");
  return out;
}

json load_circuit_json(const Options& opt) {
  if (!opt.circuit_path.empty()) {
    std::ifstream in(opt.circuit_path);
    if (!in) throw input_error("cli.family", "cannot open '" + opt.circuit_path + "'");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw input_error("cli.family", std::string("circuit parse failure: ") + e.what());
    }
  }
  if (!opt.circuit_json.empty()) {
    try {
      return json::parse(opt.circuit_json);
    } catch (const json::exception& e) {
      throw input_error("cli.family", std::string("circuit parse failure: ") + e.what());
    }
  }
  throw input_error("cli.family", "give --circuit FILE or --circuit-json TEXT");
}

Family build_family(const std::string& which, const Options& opt) {
  if (which == "w") return build_w(opt.n);
  if (which == "dicke") return build_dicke(opt.n, opt.k);
  if (which == "aklt") {
    if (opt.bc != "open" && opt.bc != "periodic")
      throw input_error("cli.family", "--bc must be open or periodic");
    return build_aklt(opt.n, opt.bc == "periodic");
  }
  if (which == "laughlin") return build_laughlin(opt.n);
  if (which == "lme") return build_lme(opt.n, opt.fn_name);
  if (which == "coset") {
    std::vector<std::vector<std::uint32_t>> hgens;
    for (const auto& t : opt.hgen_texts) hgens.push_back(parse_tuple(t, "--hgen"));
    std::vector<std::uint32_t> rep =
        opt.rep_text.empty() ? std::vector<std::uint32_t>(opt.factors.size(), 0)
                             : parse_tuple(opt.rep_text, "--rep");
    return build_coset(opt.factors, hgens, rep);
  }
  if (which == "ghz") {
    if (opt.n < 2) throw input_error("cli.family", "ghz needs --n at least 2");
    std::vector<std::string> stabs{std::string(opt.n, 'X')};
    for (std::uint32_t i = 0; i + 1 < opt.n; ++i) {
      std::string s(opt.n, 'I');
      s[i] = 'Z';
      s[i + 1] = 'Z';
      stabs.push_back(s);
    }
    Family f = build_pauli_family(pauli::PauliStabilizerGroup::parse(stabs));
    f.metadata["family"] = "ghz";
    return f;
  }
  if (which == "pauli") {
    std::vector<std::string> stabs;
    std::stringstream ss(opt.stabilizers);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) stabs.push_back(item);
    if (stabs.empty()) throw input_error("cli.family", "--stabilizers is empty");
    return build_pauli_family(pauli::PauliStabilizerGroup::parse(stabs));
  }
  if (which == "quantum_double") {
    FiniteGroupTable g = [&] {
      if (opt.group_name == "s3") return FiniteGroupTable::symmetric3();
      if (opt.group_name.rfind("cyclic:", 0) == 0)
        return FiniteGroupTable::cyclic(
            static_cast<std::uint32_t>(std::stoul(opt.group_name.substr(7))));
      if (opt.group_name == "z2") return FiniteGroupTable::cyclic(2);
      throw input_error("cli.family",
                        "unknown group '" + opt.group_name + "'; use z2, cyclic:<m> or s3");
    }();
    SphereLattice lat = [&] {
      if (opt.lattice_name == "tetrahedron") return SphereLattice::tetrahedron();
      if (opt.lattice_name == "cube") return SphereLattice::cube();
      if (opt.lattice_name == "octahedron") return SphereLattice::octahedron();
      if (opt.lattice_name == "theta") return SphereLattice::theta();
      throw input_error("cli.family", "unknown lattice '" + opt.lattice_name +
                                          "'; use tetrahedron, cube, octahedron or theta");
    }();
    return build_quantum_double(g, lat);
  }
  if (which == "coherent")
    return build_coherent_prob(ReversibleCircuit::from_json(load_circuit_json(opt)), opt.k);
  throw input_error("cli.family", "unknown family '" + which + "'");
}

GeneratorFile family_to_file(Family fam) {
  json meta = std::move(fam.metadata);
  json seeds = json::array();
  for (const auto& s : fam.seeds) seeds.push_back(s.str());
  meta["seeds"] = std::move(seeds);
  return GeneratorFile{std::move(fam.gens), std::move(meta)};
}

GeneratorFile resolve_gens(const Options& opt) {
  if (!opt.gen_path.empty() && !opt.family_name.empty())
    throw input_error("cli", "give either -g FILE or --family NAME, not both");
  if (!opt.gen_path.empty()) return load_generator_file(opt.gen_path, &family_fn_registry());
  if (!opt.family_name.empty()) return family_to_file(build_family(opt.family_name, opt));
  throw input_error("cli", "no generators: give -g FILE or --family NAME");
}

BasisVector parse_root(const std::string& text, const SiteSpace& space) {
  BasisVector v = BasisVector::parse(text);
  if (v.v.size() != space.dims.size() || !space.contains(v))
    throw input_error("cli.root", "'" + text + "' is not a basis vector of the space");
  return v;
}

std::vector<BasisVector> seeds_from_meta(const GeneratorFile& gf) {
  std::vector<BasisVector> seeds;
  if (gf.metadata.is_object() && gf.metadata.contains("seeds"))
    for (const auto& s : gf.metadata.at("seeds"))
      seeds.push_back(parse_root(s.get<std::string>(), gf.set.space()));
  return seeds;
}

struct RootPlan {
  bool exhaustive = false;
  std::vector<BasisVector> roots;
};

// analyze/oracle root resolution: explicit flags win; otherwise partition the whole
// basis when it is enumerable, falling back to recorded seeds.
RootPlan plan_roots(const Options& opt, const GeneratorFile& gf) {
  RootPlan plan;
  if (opt.exhaustive) {
    plan.exhaustive = true;
    return plan;
  }
  if (!opt.roots.empty()) {
    for (const auto& r : opt.roots) plan.roots.push_back(parse_root(r, gf.set.space()));
    return plan;
  }
  const SiteSpace& space = gf.set.space();
  if (!space.huge && space.total_dim <= opt.caps.orbit_cap) {
    plan.exhaustive = true;
    return plan;
  }
  plan.roots = seeds_from_meta(gf);
  if (plan.roots.empty())
    throw input_error("cli.root",
                      "space too large to partition exhaustively and no --root or recorded "
                      "seeds available");
  return plan;
}

BasisVector single_root(const Options& opt, const GeneratorFile& gf, const char* stage) {
  if (opt.roots.size() > 1) throw input_error(stage, "give at most one --root");
  if (opt.roots.size() == 1) return parse_root(opt.roots[0], gf.set.space());
  std::vector<BasisVector> seeds = seeds_from_meta(gf);
  if (!seeds.empty()) return seeds.front();
  throw input_error(stage, "give --root (no seeds are recorded)");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Supported: return "supported";
    case Verdict::Excluded: return "excluded";
    default: return "inconclusive";
  }
}

json witness_json(const GeneratorSet& gens, const std::pair<Word, Phase>& w) {
  return json{{"word", word_str(gens, w.first)}, {"phase", phase_to_json(w.second)},
              {"phase_text", w.second.str()}};
}

json report_json(const GeneratorSet& gens, const OrbitReport& r) {
  json j{{"root", r.tree->root.str()},
         {"size", r.tree->size()},
         {"truncated", r.tree->truncated},
         {"verdict", verdict_name(r.verdict)}};
  if (r.witness) j["witness"] = witness_json(gens, *r.witness);
  return j;
}

struct ResolvedState {
  std::shared_ptr<const SchreierTree> tree;
  std::optional<OrbitState> state;
  std::optional<std::pair<Word, Phase>> witness;
};

ResolvedState make_state(const GeneratorSet& gens, const BasisVector& root,
                         const AnalysisCaps& caps) {
  auto tree = std::make_shared<SchreierTree>(orbit_bfs(gens, root, caps.orbit_cap));
  ResolvedState rs;
  rs.tree = tree;
  if (tree->truncated)
    throw refused_error("cli.state", "orbit truncated at " + std::to_string(tree->size()) +
                                         " members; raise --orbit-cap to decide");
  SupportVerdict sv = support_test(*tree, gens);
  if (sv.in_support)
    rs.state = orbit_state(tree, gens);
  else
    rs.witness = sv.witness;
  return rs;
}

std::uint64_t pick_seed(const Options& opt) {
  if (opt.seed_given) return opt.seed;
  return std::random_device{}();
}

json estimate_json(const Estimate& e) {
  json j{{"value", json{{"re", e.value.real()}, {"im", e.value.imag()}}},
         {"epsilon", e.epsilon},
         {"delta", e.delta},
         {"samples_used", e.samples_used},
         {"method", e.method == EstimateMethod::exact_enumeration ? "exact_enumeration"
                                                                  : "monte_carlo"}};
  if (e.method == EstimateMethod::monte_carlo) j["seed"] = e.seed;
  return j;
}

int run_family(const std::string& which, const Options& opt, std::ostream& out) {
  Family fam = build_family(which, opt);
  json meta = fam.metadata;
  json seeds = json::array();
  for (const auto& s : fam.seeds) seeds.push_back(s.str());
  meta["seeds"] = std::move(seeds);
  emit(generator_file_to_json(fam.gens, meta), opt, out);
  return 0;
}

int run_analyze(const Options& opt, std::ostream& out) {
  GeneratorFile gf = resolve_gens(opt);
  RootPlan plan = plan_roots(opt, gf);
  std::vector<OrbitReport> reports =
      plan.exhaustive ? orbit_basis_exhaustive(gf.set, opt.caps.orbit_cap)
                      : orbit_basis(gf.set, plan.roots, opt.caps.orbit_cap);
  json orbits = json::array();
  std::uint64_t supported = 0;
  bool undecided = false;
  for (const auto& r : reports) {
    orbits.push_back(report_json(gf.set, r));
    if (r.verdict == Verdict::Supported) ++supported;
    if (r.verdict == Verdict::Inconclusive) undecided = true;
  }
  json j{{"space", gf.set.space().dims},
         {"exhaustive", plan.exhaustive},
         {"orbits", std::move(orbits)},
         {"supported_count", supported}};
  if (plan.exhaustive && !undecided) j["dimension"] = supported;
  emit(j, opt, out);
  return undecided ? 1 : 0;
}

int run_state(const Options& opt, std::ostream& out) {
  GeneratorFile gf = resolve_gens(opt);
  BasisVector root = single_root(opt, gf, "cli.state");
  ResolvedState rs = make_state(gf.set, root, opt.caps);
  if (!rs.state) {
    json j{{"root", root.str()}, {"supported", false}};
    if (rs.witness) j["witness"] = witness_json(gf.set, *rs.witness);
    emit(j, opt, out);
    return 0;
  }
  if (rs.state->size() > opt.max_members)
    throw refused_error("cli.state", "orbit has " + std::to_string(rs.state->size()) +
                                         " members; raise --max-members to print them all");
  json amps = json::array();
  for (std::size_t i = 0; i < rs.tree->members.size(); ++i)
    amps.push_back(json{{"vector", rs.tree->members[i].str()},
                        {"phase", phase_to_json(rs.state->xi[i])},
                        {"phase_text", rs.state->xi[i].str()}});
  emit(json{{"root", root.str()},
            {"supported", true},
            {"size", rs.state->size()},
            {"norm", rs.state->norm},
            {"amplitudes", std::move(amps)}},
       opt, out);
  return 0;
}

int run_sample(const Options& opt, std::ostream& out) {
  GeneratorFile gf = resolve_gens(opt);
  BasisVector root = single_root(opt, gf, "cli.sample");
  if (opt.method != "index" && opt.method != "word")
    throw input_error("cli.sample", "--method must be index or word");
  ResolvedState rs = make_state(gf.set, root, opt.caps);
  if (!rs.state) {
    json j{{"root", root.str()}, {"supported", false}};
    if (rs.witness) j["witness"] = witness_json(gf.set, *rs.witness);
    emit(j, opt, out);
    return 0;
  }
  std::uint64_t seed = pick_seed(opt);
  std::mt19937_64 rng(seed);
  json samples = json::array();
  if (opt.method == "index") {
    for (std::uint64_t i = 0; i < opt.count; ++i)
      samples.push_back(sample_orbit(*rs.state, rng).str());
  } else {
    for (std::uint64_t i = 0; i < opt.count; ++i)
      samples.push_back(sample_random_word(gf.set, root, opt.word_len, rng).str());
  }
  json j{{"root", root.str()},
         {"size", rs.state->size()},
         {"method", opt.method},
         {"seed", seed},
         {"count", opt.count},
         {"samples", std::move(samples)}};
  if (opt.method == "word") j["word_len"] = opt.word_len;
  emit(j, opt, out);
  return 0;
}

Eigen::MatrixXcd parse_matrix(const std::string& text, std::size_t dim) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error("cli.expect", std::string("matrix parse failure: ") + e.what());
  }
  if (!j.is_array() || j.size() != dim)
    throw input_error("cli.expect", "matrix must be " + std::to_string(dim) + " rows");
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != dim)
      throw input_error("cli.expect", "matrix row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& e = row.at(c);
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        throw input_error("cli.expect", "matrix entries are numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

int run_expect(const Options& opt, std::ostream& out) {
  GeneratorFile gf = resolve_gens(opt);
  BasisVector root = single_root(opt, gf, "cli.expect");
  ResolvedState rs = make_state(gf.set, root, opt.caps);
  if (!rs.state) {
    json j{{"root", root.str()}, {"supported", false}};
    if (rs.witness) j["witness"] = witness_json(gf.set, *rs.witness);
    emit(j, opt, out);
    return 0;
  }
  const SiteSpace& space = gf.set.space();
  json j{{"root", root.str()}, {"size", rs.state->size()}};
  if (!opt.pauli_text.empty() && !opt.local_sites.empty())
    throw input_error("cli.expect", "--pauli and --local-sites are mutually exclusive");
  if (!opt.pauli_text.empty()) {
    PauliWord w = parse_pauli_word(opt.pauli_text, space);
    j["observable"] = opt.pauli_text;
    if (opt.exact) {
      Estimate e;
      e.value = exact_pauli(*rs.state, space, w);
      e.samples_used = rs.state->size();
      e.method = EstimateMethod::exact_enumeration;
      j["estimate"] = estimate_json(e);
    } else {
      Estimate e = estimate_pauli(access_orbit_state(*rs.state), space, w, opt.eps, opt.delta,
                                  pick_seed(opt));
      j["estimate"] = estimate_json(e);
    }
  } else if (!opt.local_sites.empty()) {
    if (opt.exact)
      throw input_error("cli.expect", "--exact applies to --pauli observables only");
    std::size_t dim = 1;
    for (std::size_t i = 0; i < opt.local_sites.size(); ++i) dim *= 2;
    Eigen::MatrixXcd m = parse_matrix(opt.local_matrix, dim);
    Estimate e = estimate_local(access_orbit_state(*rs.state), space, opt.local_sites, m,
                                opt.eps, opt.delta, pick_seed(opt));
    j["observable"] = json{{"sites", opt.local_sites}};
    j["estimate"] = estimate_json(e);
  } else {
    throw input_error("cli.expect", "give --pauli TEXT or --local-sites with --local-matrix");
  }
  emit(j, opt, out);
  return 0;
}

int run_oracle(const Options& opt, bool check_group, std::ostream& out) {
  GeneratorFile gf = resolve_gens(opt);
  RootPlan plan = plan_roots(opt, gf);
  std::vector<OrbitReport> reports =
      plan.exhaustive ? orbit_basis_exhaustive(gf.set, opt.caps.orbit_cap)
                      : orbit_basis(gf.set, plan.roots, opt.caps.orbit_cap);
  for (const auto& r : reports)
    if (r.verdict == Verdict::Inconclusive)
      throw refused_error("cli.oracle", "orbit of " + r.tree->root.str() +
                                            " is undecided; nothing to cross-check");
  std::vector<Eigen::VectorXcd> states;
  for (const auto& r : reports)
    if (r.state) states.push_back(state_vector(*r.state, gf.set.space(), opt.caps.dense_cap));
  Eigen::MatrixXcd basis = joint_fixed_space(gf.set, opt.caps.dense_cap);
  BasisComparison cmp = compare_basis(states, basis);
  json j{{"space", gf.set.space().dims},
         {"exhaustive", plan.exhaustive},
         {"orbit_dimension", states.size()},
         {"fixed_dimension", basis.cols()},
         {"comparison",
          json{{"agree", cmp.agree},
               {"max_norm_err", cmp.max_norm_err},
               {"max_ortho_err", cmp.max_ortho_err},
               {"max_residual", cmp.max_residual},
               {"projector_distance", cmp.projector_dist},
               {"detail", cmp.detail}}}};
  if (!plan.exhaustive) {
    // Orbit states found from listed roots span a subspace of the fixed space; only
    // an exhaustive run can claim the dimensions match.
    j["note"] = "non-exhaustive roots: orbit states are checked for containment, not "
                "for spanning";
    bool contained = cmp.max_residual <= 1e-8 && cmp.max_norm_err <= 1e-9 &&
                     cmp.max_ortho_err <= 1e-9 && states.size() <= std::size_t(basis.cols());
    j["comparison"]["agree"] = contained;
    if (contained) j["comparison"]["detail"] = "";
  }
  if (check_group) {
    DenseGroup grp = group_enumerate(gf.set, opt.caps.group_cap, opt.caps.dense_cap);
    json gj{{"size", grp.elements.size()}, {"truncated", grp.truncated}};
    if (!grp.truncated) {
      Eigen::MatrixXcd rho = average_projector(grp);
      double dist = (rho - basis * basis.adjoint()).cwiseAbs().maxCoeff();
      gj["projector_max_err"] = dist;
      if (dist > 1e-8) j["comparison"]["agree"] = false;
    }
    j["group"] = std::move(gj);
  }
  emit(j, opt, out);
  return j["comparison"]["agree"].get<bool>() ? 0 : 1;
}

int run_cnf_reduce(const Options& opt, std::ostream& out) {
  CnfFormula f = parse_dimacs_file(opt.in_path);
  GeneratorSet gens = cnf_generators(f);
  json meta{{"family", "cnf"}, {"vars", f.num_vars}, {"clauses", f.clauses.size()}};
  emit(generator_file_to_json(gens, meta), opt, out);
  return 0;
}

int run_cnf_solve(const Options& opt, std::ostream& out) {
  CnfFormula f = parse_dimacs_file(opt.in_path);
  CnfVerdict v = solve_cnf(f, opt.caps.orbit_cap);
  json assignments = json::array();
  for (const auto& a : v.satisfying) assignments.push_back(a.str());
  emit(json{{"satisfiable", v.satisfiable},
            {"dimension", v.dimension},
            {"assignments", std::move(assignments)}},
       opt, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"monomial stabilizer states: orbits, support, sampling, cross-checks"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", opt.out_path, "write the JSON result here instead of stdout");
    cmd->add_flag("--pretty", opt.pretty, "indent the JSON output");
  };
  auto add_family_params = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "number of sites");
    cmd->add_option("--k", opt.k, "dicke weight / coherent random-input count");
    cmd->add_option("--bc", opt.bc, "aklt boundary: open or periodic");
    cmd->add_option("--stabilizers", opt.stabilizers,
                    "comma-separated labels, e.g. XXX,ZZI,IZZ");
    cmd->add_option("--group", opt.group_name, "z2, cyclic:<m> or s3");
    cmd->add_option("--lattice", opt.lattice_name,
                    "tetrahedron, cube, octahedron or theta");
    cmd->add_option("--factors", opt.factors, "cyclic factor orders, e.g. 2,4")
        ->delimiter(',');
    cmd->add_option("--hgen", opt.hgen_texts,
                    "subgroup generator tuple, e.g. 1,2 (repeatable)");
    cmd->add_option("--rep", opt.rep_text, "coset representative tuple (default all zero)");
    cmd->add_option("--circuit", opt.circuit_path, "circuit description file (JSON)");
    cmd->add_option("--circuit-json", opt.circuit_json, "inline circuit JSON");
    cmd->add_option("--fn", opt.fn_name, "ones, cz_chain, cz_complete or i_weight");
  };
  auto add_gens = [&](CLI::App* cmd) {
    cmd->add_option("-g,--generators", opt.gen_path, "generator file");
    cmd->add_option("--family", opt.family_name,
                    "build a named family inline instead of reading a file");
    add_family_params(cmd);
    cmd->add_option("--orbit-cap", opt.caps.orbit_cap, "orbit enumeration cap");
  };
  auto add_roots = [&](CLI::App* cmd) {
    cmd->add_option("--root", opt.roots, "starting basis vector (repeatable)");
  };

  CLI::App* family = app.add_subcommand("family", "emit a generator file for a named family");
  family->require_subcommand(1);
  std::vector<std::string> family_names = {"w",       "dicke",          "aklt",
                                           "ghz",     "pauli",          "quantum_double",
                                           "coset",   "coherent",       "laughlin",
                                           "lme"};
  for (const auto& name : family_names) {
    CLI::App* f = family->add_subcommand(name);
    add_io(f);
    if (name == "w" || name == "dicke" || name == "aklt" || name == "ghz" ||
        name == "lme" || name == "laughlin")
      f->add_option("--n", opt.n, "number of sites")->required();
    if (name == "dicke") f->add_option("--k", opt.k, "excitation count")->required();
    if (name == "aklt") f->add_option("--bc", opt.bc, "open or periodic");
    if (name == "pauli")
      f->add_option("--stabilizers", opt.stabilizers, "comma-separated labels, e.g. XXX,ZZI,IZZ")
          ->required();
    if (name == "quantum_double") {
      f->add_option("--group", opt.group_name, "z2, cyclic:<m> or s3")->required();
      f->add_option("--lattice", opt.lattice_name, "tetrahedron, cube, octahedron or theta")
          ->required();
    }
    if (name == "coset") {
      f->add_option("--factors", opt.factors, "cyclic factor orders, e.g. 2,4")
          ->delimiter(',')
          ->required();
      f->add_option("--hgen", opt.hgen_texts, "subgroup generator tuple, e.g. 1,2 (repeatable)");
      f->add_option("--rep", opt.rep_text, "coset representative tuple (default all zero)");
    }
    if (name == "coherent") {
      f->add_option("--circuit", opt.circuit_path, "circuit description file (JSON)");
      f->add_option("--circuit-json", opt.circuit_json, "inline circuit JSON");
      f->add_option("--k", opt.k, "number of uniformly random input wires (the first k)")
          ->required();
    }
    if (name == "lme")
      f->add_option("--fn", opt.fn_name, "ones, cz_chain, cz_complete or i_weight")->required();
  }

  CLI::App* analyze = app.add_subcommand("analyze", "orbit sizes and support verdicts");
  add_gens(analyze);
  add_roots(analyze);
  analyze->add_flag("--exhaustive", opt.exhaustive, "partition the whole basis");
  add_io(analyze);

  CLI::App* state = app.add_subcommand("state", "amplitudes of one orbit state");
  add_gens(state);
  add_roots(state);
  state->add_option("--max-members", opt.max_members, "refuse to print larger orbits");
  add_io(state);

  CLI::App* sample = app.add_subcommand("sample", "draw basis vectors from an orbit state");
  add_gens(sample);
  add_roots(sample);
  sample->add_option("--count", opt.count, "number of draws")->required();
  sample->add_option("--method", opt.method,
                     "index (exact orbit-uniform) or word (random generator walk)");
  sample->add_option("--word-len", opt.word_len, "walk length for --method word");
  sample->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_given = true;
  });
  add_io(sample);

  CLI::App* expect = app.add_subcommand("expect", "expectation values on an orbit state");
  add_gens(expect);
  add_roots(expect);
  expect->add_option("--pauli", opt.pauli_text, "Pauli observable, e.g. 'X0 Z1' or 'ZII'");
  expect->add_option("--local-sites", opt.local_sites, "qubit sites of a local observable");
  expect->add_option("--local-matrix", opt.local_matrix,
                     "row-major JSON matrix; entries are numbers or [re, im]");
  expect->add_option("--epsilon,--eps", opt.eps, "additive error target");
  expect->add_option("--delta", opt.delta, "failure probability");
  expect->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_given = true;
  });
  expect->add_flag("--exact", opt.exact, "sum over the whole orbit instead of sampling");
  add_io(expect);

  CLI::App* oracle = app.add_subcommand("oracle",
                                        "cross-check orbit states against dense linear algebra");
  add_gens(oracle);
  add_roots(oracle);
  oracle->add_flag("--exhaustive", opt.exhaustive, "partition the whole basis");
  oracle->add_option("--dense-cap", opt.caps.dense_cap, "densification cap");
  oracle->add_option("--group-cap", opt.caps.group_cap, "group enumeration cap");
  bool check_group = false;
  oracle->add_flag("--check-group", check_group,
                   "also enumerate the matrix group and verify its average projector");
  add_io(oracle);

  CLI::App* cnf = app.add_subcommand("cnf", "3-SAT reduction and small-instance solving");
  cnf->require_subcommand(1);
  CLI::App* reduce = cnf->add_subcommand("reduce", "formula to generator file");
  reduce->add_option("-i,--input", opt.in_path, "DIMACS file")->required();
  add_io(reduce);
  CLI::App* solve = cnf->add_subcommand("solve", "decide a small formula by support tests");
  solve->add_option("-i,--input", opt.in_path, "DIMACS file")->required();
  solve->add_option("--cap,--orbit-cap", opt.caps.orbit_cap, "exhaustive assignment cap");
  add_io(solve);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (family->parsed())
      for (auto* sub : family->get_subcommands())
        return run_family(sub->get_name(), opt, out);
    if (analyze->parsed()) return run_analyze(opt, out);
    if (state->parsed()) return run_state(opt, out);
    if (sample->parsed()) return run_sample(opt, out);
    if (expect->parsed()) return run_expect(opt, out);
    if (oracle->parsed()) return run_oracle(opt, check_group, out);
    if (cnf->parsed()) {
      if (reduce->parsed()) return run_cnf_reduce(opt, out);
      if (solve->parsed()) return run_cnf_solve(opt, out);
    }
    throw input_error("cli", "no subcommand");
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const refused_error& e) {
    err << "refused: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace msf
