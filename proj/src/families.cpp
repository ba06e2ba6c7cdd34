#include "msf/families.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <queue>

#include "msf/errors.hpp"

namespace msf {

using nlohmann::json;

FiniteGroupTable FiniteGroupTable::cyclic(std::uint32_t m) {
  if (m == 0) throw input_error("families.group", "cyclic group needs positive order");
  std::vector<std::vector<std::uint32_t>> mul(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) mul[a][b] = (a + b) % m;
  std::vector<std::uint32_t> gens;
  if (m >= 2) gens.push_back(1);
  return from_mul(std::move(mul), std::move(gens));
}

FiniteGroupTable FiniteGroupTable::symmetric3() {
  const std::array<std::array<std::uint32_t, 3>, 6> perms = {{
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
  auto index_of = [&](const std::array<std::uint32_t, 3>& p) -> std::uint32_t {
    for (std::uint32_t i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw internal_error("families.group", "permutation composition left the table");
  };
  std::vector<std::vector<std::uint32_t>> mul(6, std::vector<std::uint32_t>(6));
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) {
      std::array<std::uint32_t, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = index_of(c);
    }
  return from_mul(std::move(mul), {1, 4});
}

FiniteGroupTable FiniteGroupTable::from_mul(std::vector<std::vector<std::uint32_t>> mul,
                                            std::vector<std::uint32_t> gens) {
  FiniteGroupTable g;
  g.order = static_cast<std::uint32_t>(mul.size());
  if (g.order == 0) throw input_error("families.group", "empty multiplication table");
  for (const auto& row : mul) {
    if (row.size() != g.order)
      throw input_error("families.group", "multiplication table is not square");
    for (auto x : row)
      if (x >= g.order) throw input_error("families.group", "table entry out of range");
  }
  for (std::uint32_t a = 0; a < g.order; ++a)
    if (mul[0][a] != a || mul[a][0] != a)
      throw input_error("families.group", "element 0 is not the identity");
  for (std::uint32_t a = 0; a < g.order; ++a) {
    std::vector<char> seen_r(g.order, 0), seen_c(g.order, 0);
    for (std::uint32_t b = 0; b < g.order; ++b) {
      if (seen_r[mul[a][b]]++) throw input_error("families.group", "row repeats an element");
      if (seen_c[mul[b][a]]++) throw input_error("families.group", "column repeats an element");
    }
  }
  if (g.order > 128)
    throw input_error("families.group",
                      "order above 128; the associativity check would be too slow");
  for (std::uint32_t a = 0; a < g.order; ++a)
    for (std::uint32_t b = 0; b < g.order; ++b)
      for (std::uint32_t c = 0; c < g.order; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw input_error("families.group", "multiplication is not associative");
  g.inv.resize(g.order);
  for (std::uint32_t a = 0; a < g.order; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < g.order; ++b)
      if (mul[a][b] == 0 && mul[b][a] == 0) {
        g.inv[a] = b;
        found = true;
        break;
      }
    if (!found) throw input_error("families.group", "an element has no inverse");
  }
  for (auto x : gens)
    if (x >= g.order) throw input_error("families.group", "generator out of range");
  std::vector<char> reached(g.order, 0);
  reached[0] = 1;
  std::queue<std::uint32_t> q;
  q.push(0);
  while (!q.empty()) {
    std::uint32_t cur = q.front();
    q.pop();
    for (auto x : gens) {
      std::uint32_t nxt = mul[cur][x];
      if (!reached[nxt]) {
        reached[nxt] = 1;
        q.push(nxt);
      }
    }
  }
  if (std::count(reached.begin(), reached.end(), 1) != std::ptrdiff_t(g.order))
    throw input_error("families.group", "the listed generators do not generate the group");
  g.mul = std::move(mul);
  g.gens = std::move(gens);
  return g;
}

void SphereLattice::validate() const {
  if (num_vertices == 0) throw input_error("families.lattice", "no vertices");
  for (const auto& e : edges) {
    if (e.from >= num_vertices || e.to >= num_vertices)
      throw input_error("families.lattice", "edge endpoint out of range");
    if (e.from == e.to)
      throw input_error("families.lattice", "edge endpoints must be distinct vertices");
  }
  std::vector<int> fwd(edges.size(), 0), bwd(edges.size(), 0);
  for (const auto& face : faces) {
    if (face.empty()) throw input_error("families.lattice", "empty face");
    for (std::size_t i = 0; i < face.size(); ++i) {
      auto [e, s] = face[i];
      if (e >= edges.size()) throw input_error("families.lattice", "face uses a missing edge");
      if (s != 1 && s != -1) throw input_error("families.lattice", "face sign must be +-1");
      (s == 1 ? fwd : bwd)[e] += 1;
      auto [e2, s2] = face[(i + 1) % face.size()];
      std::uint32_t head = s == 1 ? edges[e].to : edges[e].from;
      std::uint32_t tail = s2 == 1 ? edges[e2].from : edges[e2].to;
      if (head != tail) throw input_error("families.lattice", "face walk is not closed");
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (fwd[e] != 1 || bwd[e] != 1)
      throw input_error("families.lattice",
                        "edge " + std::to_string(e) +
                            " must appear in exactly two faces with opposite orientation");
  long euler = long(num_vertices) - long(edges.size()) + long(faces.size());
  if (euler != 2)
    throw input_error("families.lattice",
                      "Euler characteristic " + std::to_string(euler) + ", expected 2");
}

SphereLattice SphereLattice::tetrahedron() {
  SphereLattice l;
  l.num_vertices = 4;
  l.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  l.faces = {{{0, 1}, {3, 1}, {1, -1}},
             {{2, 1}, {4, -1}, {0, -1}},
             {{1, 1}, {5, 1}, {2, -1}},
             {{4, 1}, {5, -1}, {3, -1}}};
  l.validate();
  return l;
}

SphereLattice SphereLattice::cube() {
  SphereLattice l;
  l.num_vertices = 8;
  l.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
             {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  l.faces = {{{3, -1}, {2, -1}, {1, -1}, {0, -1}},
             {{4, 1}, {5, 1}, {6, 1}, {7, 1}},
             {{0, 1}, {9, 1}, {4, -1}, {8, -1}},
             {{1, 1}, {10, 1}, {5, -1}, {9, -1}},
             {{2, 1}, {11, 1}, {6, -1}, {10, -1}},
             {{3, 1}, {8, 1}, {7, -1}, {11, -1}}};
  l.validate();
  return l;
}

SphereLattice SphereLattice::octahedron() {
  SphereLattice l;
  l.num_vertices = 6;
  l.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3},
             {3, 4}, {4, 1}, {1, 5}, {2, 5}, {3, 5}, {4, 5}};
  l.faces = {{{0, 1}, {4, 1}, {1, -1}},
             {{1, 1}, {5, 1}, {2, -1}},
             {{2, 1}, {6, 1}, {3, -1}},
             {{3, 1}, {7, 1}, {0, -1}},
             {{8, 1}, {9, -1}, {4, -1}},
             {{9, 1}, {10, -1}, {5, -1}},
             {{10, 1}, {11, -1}, {6, -1}},
             {{11, 1}, {8, -1}, {7, -1}}};
  l.validate();
  return l;
}

SphereLattice SphereLattice::theta() {
  SphereLattice l;
  l.num_vertices = 2;
  l.edges = {{0, 1}, {0, 1}, {0, 1}};
  l.faces = {{{0, 1}, {1, -1}}, {{1, 1}, {2, -1}}, {{2, 1}, {0, -1}}};
  l.validate();
  return l;
}

BasisVector ReversibleCircuit::apply(BasisVector x) const {
  if (x.v.size() != n) throw input_error("families.circuit", "input width mismatch");
  for (auto d : x.v)
    if (d > 1) throw input_error("families.circuit", "circuit inputs must be bits");
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Not: x.v[g.a] ^= 1; break;
      case Gate::Cnot:
        if (x.v[g.a]) x.v[g.b] ^= 1;
        break;
      case Gate::Toffoli:
        if (x.v[g.a] && x.v[g.b]) x.v[g.c] ^= 1;
        break;
    }
  }
  return x;
}

BasisVector ReversibleCircuit::unapply(BasisVector y) const {
  ReversibleCircuit rev;
  rev.n = n;
  rev.gates.assign(gates.rbegin(), gates.rend());
  return rev.apply(std::move(y));
}

json ReversibleCircuit::to_json() const {
  json gs = json::array();
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Not: gs.push_back({{"gate", "not"}, {"t", g.a}}); break;
      case Gate::Cnot: gs.push_back({{"gate", "cnot"}, {"c", g.a}, {"t", g.b}}); break;
      case Gate::Toffoli:
        gs.push_back({{"gate", "toffoli"}, {"c1", g.a}, {"c2", g.b}, {"t", g.c}});
        break;
    }
  }
  return json{{"n", n}, {"gates", std::move(gs)}};
}

ReversibleCircuit ReversibleCircuit::from_json(const json& j) {
  ReversibleCircuit c;
  try {
    c.n = j.at("n").get<std::uint32_t>();
    for (const auto& gj : j.at("gates")) {
      const std::string kind = gj.at("gate").get<std::string>();
      Gate g;
      if (kind == "not") {
        g = {Gate::Not, gj.at("t").get<std::uint32_t>(), 0, 0};
      } else if (kind == "cnot") {
        g = {Gate::Cnot, gj.at("c").get<std::uint32_t>(), gj.at("t").get<std::uint32_t>(), 0};
        if (g.a == g.b) throw input_error("families.circuit", "cnot control equals target");
      } else if (kind == "toffoli") {
        g = {Gate::Toffoli, gj.at("c1").get<std::uint32_t>(), gj.at("c2").get<std::uint32_t>(),
             gj.at("t").get<std::uint32_t>()};
        if (g.a == g.b || g.a == g.c || g.b == g.c)
          throw input_error("families.circuit", "toffoli wires must be distinct");
      } else {
        throw input_error("families.circuit", "unknown gate '" + kind + "'");
      }
      std::vector<std::uint32_t> wires;
      if (kind == "not") wires = {g.a};
      if (kind == "cnot") wires = {g.a, g.b};
      if (kind == "toffoli") wires = {g.a, g.b, g.c};
      for (auto w : wires)
        if (w >= c.n) throw input_error("families.circuit", "gate wire out of range");
      c.gates.push_back(g);
    }
  } catch (const json::exception& e) {
    throw input_error("families.circuit", e.what());
  }
  return c;
}

namespace {

MonomialOp embedded_x(std::uint32_t site) {
  return MonomialOp::embedded(LocalMonomialGate({2}, {1, 0}, {Phase::one(), Phase::one()}),
                              {site});
}

MonomialOp swap_gate(std::uint32_t a, std::uint32_t b, std::uint32_t d, bool negate) {
  std::vector<std::uint32_t> perm(d * d);
  std::vector<Phase> phases(d * d, negate ? Phase::minus_one() : Phase::one());
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j) perm[i * d + j] = j * d + i;
  return MonomialOp::embedded(LocalMonomialGate({d, d}, std::move(perm), std::move(phases)),
                              {a, b});
}

std::string pair_name(std::uint32_t a, std::uint32_t b, std::uint32_t n) {
  if (n <= 9) return "U" + std::to_string(a + 1) + std::to_string(b + 1);
  return "U" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
}

MonomialOp make_circuit_x(const ReversibleCircuit& c, std::uint32_t site) {
  if (site >= c.n) throw input_error("families.circuit", "conjugated site out of range");
  auto act = [c, site](const BasisVector& y) {
    BasisVector x = c.unapply(y);
    x.v[site] ^= 1;
    return c.apply(std::move(x));
  };
  FnSpec spec{"circuit_conj_x",
              json{{"circuit", c.to_json()}, {"site", site}}.dump()};
  return MonomialOp::permutation_fn(act, act,
                                    "circuit-conjugated flip at site " + std::to_string(site),
                                    spec);
}

MonomialOp make_circuit_z(const ReversibleCircuit& c, std::uint32_t site) {
  if (site >= c.n) throw input_error("families.circuit", "conjugated site out of range");
  auto ph = [c, site](const BasisVector& y) {
    return c.unapply(y).v[site] ? Phase::minus_one() : Phase::one();
  };
  FnSpec spec{"circuit_conj_z",
              json{{"circuit", c.to_json()}, {"site", site}}.dump()};
  return MonomialOp::diagonal_fn(ph,
                                 "circuit-conjugated sign at site " + std::to_string(site),
                                 spec);
}

MonomialOp make_lme_diag(const std::string& name, std::uint32_t n) {
  std::function<Phase(const BasisVector&)> f;
  auto bit = [](const BasisVector& y, std::size_t i) {
    if (y.v[i] > 1) throw input_error("families.lme", "diagonal defined on qubits only");
    return y.v[i];
  };
  if (name == "ones") {
    f = [](const BasisVector&) { return Phase::one(); };
  } else if (name == "cz_chain") {
    f = [bit](const BasisVector& y) {
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i + 1 < y.v.size(); ++i) acc ^= bit(y, i) & bit(y, i + 1);
      return acc ? Phase::minus_one() : Phase::one();
    };
  } else if (name == "cz_complete") {
    f = [bit](const BasisVector& y) {
      std::uint32_t total = 0;
      for (std::size_t i = 0; i < y.v.size(); ++i) total += bit(y, i);
      // sum over pairs i<j of y_i y_j = C(weight, 2)
      return ((total * (total - 1) / 2) % 2) ? Phase::minus_one() : Phase::one();
    };
  } else if (name == "i_weight") {
    f = [bit](const BasisVector& y) {
      std::uint32_t total = 0;
      for (std::size_t i = 0; i < y.v.size(); ++i) total += bit(y, i);
      return Phase::root_of_unity(total, 4);
    };
  } else {
    throw input_error("families.lme",
                      "unknown diagonal '" + name +
                          "'; known: ones, cz_chain, cz_complete, i_weight");
  }
  FnSpec spec{"lme_diag", json{{"fn", name}, {"n", n}}.dump()};
  return MonomialOp::diagonal_fn(std::move(f), "diagonal " + name, spec);
}

}  // namespace

Family build_dicke(std::uint32_t n, std::uint32_t k) {
  if (n < 2) throw input_error("families.dicke", "need at least 2 sites");
  if (k < 1 || k > n) throw input_error("families.dicke", "weight must lie in 1..n");
  SiteSpace space = qubits(n);
  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    gens.emplace_back("S" + std::to_string(i + 1), swap_gate(i, i + 1, 2, false));
  // Weight counter: phase a^(weight - k) with a = exp(2 pi i / n); the constant
  // a^-k is folded into the site-0 factor. Phase 1 exactly on weight-k strings
  // (weights stay within [0, n], so only k = 0 vs n collide mod n).
  std::vector<MonomialOp> t_factors;
  for (std::uint32_t j = 0; j < n; ++j) {
    std::int64_t base = (j == 0) ? -std::int64_t(k) : 0;
    t_factors.push_back(MonomialOp::embedded(
        LocalMonomialGate({2}, {0, 1},
                          {Phase::root_of_unity(base, n), Phase::root_of_unity(base + 1, n)}),
        {j}));
  }
  gens.emplace_back("T", MonomialOp::product(std::move(t_factors)));
  BasisVector seed;
  seed.v.assign(n, 0);
  for (std::uint32_t i = 0; i < k; ++i) seed.v[i] = 1;
  std::uint64_t binom = 1;
  for (std::uint32_t i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  // k = n leaves weight 0 indistinguishable from weight n mod n, so the all-zero
  // orbit is supported too.
  std::uint64_t support = binom + (k == n ? 1 : 0);
  std::uint32_t dim = (k == n) ? 2 : 1;
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "dicke"},
                     {"n", n},
                     {"k", k},
                     {"expected_dimension", dim},
                     {"expected_support_size", support}}};
}

Family build_w(std::uint32_t n) {
  Family f = build_dicke(n, 1);
  f.metadata["family"] = "w";
  f.metadata.erase("k");
  return f;
}

Family build_aklt(std::uint32_t n, bool periodic) {
  if (n < 2) throw input_error("families.aklt", "need at least 2 sites");
  SiteSpace space = qudits(n, 3);
  // Two-site gate: signed swaps of distinct pairs, and the diagonal cycle
  // 00 -> 11 -> 22 -> 00.
  std::vector<std::uint32_t> perm = {4, 3, 6, 1, 8, 7, 2, 5, 0};
  std::vector<Phase> phases(9, Phase::one());
  for (std::uint32_t t : {1, 2, 3, 5, 6, 7}) phases[t] = Phase::minus_one();
  LocalMonomialGate gate({3, 3}, std::move(perm), std::move(phases));

  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    gens.emplace_back(pair_name(i, i + 1, n), MonomialOp::embedded(gate, {i, i + 1}));
  if (periodic) gens.emplace_back(pair_name(n - 1, 0, n), MonomialOp::embedded(gate, {n - 1, 0}));
  std::vector<BasisVector> seeds;
  json meta{{"family", "aklt"}, {"n", n}, {"periodic", periodic}};
  BasisVector zero;
  zero.v.assign(n, 0);
  seeds.push_back(zero);
  if (n % 2 == 0) {
    // One representative per orbit for even chains; the open chain supports all
    // four, the periodic wrap keeps only the first.
    BasisVector rx, ry, rz;
    rx.v.assign(n, 0);
    rx.v[n - 2] = 1;
    rx.v[n - 1] = 2;
    ry.v.assign(n, 1);
    ry.v[n - 2] = 0;
    ry.v[n - 1] = 2;
    rz.v.assign(n, 2);
    rz.v[n - 2] = 0;
    rz.v[n - 1] = 1;
    json reps = json::array({zero.str(), rx.str(), ry.str(), rz.str()});
    meta["orbit_reps"] = std::move(reps);
    if (!periodic) {
      seeds.push_back(std::move(rx));
      seeds.push_back(std::move(ry));
      seeds.push_back(std::move(rz));
    }
  }
  return Family{GeneratorSet(space, std::move(gens)), std::move(seeds), std::move(meta)};
}

Family build_quantum_double(const FiniteGroupTable& g, const SphereLattice& lat) {
  lat.validate();
  const std::uint32_t d = g.order;
  if (d < 2) throw input_error("families.double", "group must have at least 2 elements");
  const std::size_t ne = lat.edges.size();
  SiteSpace space(std::vector<std::uint32_t>(ne, d));

  auto decode = [d](std::uint64_t t, std::size_t len) {
    std::vector<std::uint32_t> digits(len);
    for (std::size_t j = len; j-- > 0;) {
      digits[j] = t % d;
      t /= d;
    }
    return digits;
  };
  auto encode = [d](const std::vector<std::uint32_t>& digits) {
    std::uint64_t t = 0;
    for (auto x : digits) t = t * d + x;
    return t;
  };

  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::size_t f = 0; f < lat.faces.size(); ++f) {
    const auto& face = lat.faces[f];
    std::vector<std::uint32_t> sites;
    for (auto [e, s] : face) sites.push_back(e);
    std::uint64_t table = 1;
    for (std::size_t j = 0; j < face.size(); ++j) table *= d;
    std::vector<std::uint32_t> perm(table);
    std::vector<Phase> phases(table);
    for (std::uint64_t t = 0; t < table; ++t) {
      perm[t] = static_cast<std::uint32_t>(t);
      auto digits = decode(t, face.size());
      // Holonomy multiplies the edge factors from the last walk step down to the
      // first; for nonabelian groups the order changes which configurations pass.
      std::uint32_t h = 0;
      for (std::size_t j = face.size(); j-- > 0;) {
        std::uint32_t val = face[j].second == 1 ? digits[j] : g.inv[digits[j]];
        h = g.times(h, val);
      }
      phases[t] = h == 0 ? Phase::one() : Phase::minus_one();
    }
    gens.emplace_back("P" + std::to_string(f + 1),
                      MonomialOp::embedded(
                          LocalMonomialGate(std::vector<std::uint32_t>(face.size(), d),
                                            std::move(perm), std::move(phases)),
                          std::move(sites)));
  }

  for (std::uint32_t v = 0; v < lat.num_vertices; ++v) {
    std::vector<std::uint32_t> incident;
    for (std::uint32_t e = 0; e < ne; ++e)
      if (lat.edges[e].from == v || lat.edges[e].to == v) incident.push_back(e);
    if (incident.empty()) throw input_error("families.double", "isolated vertex");
    for (std::uint32_t k : g.gens) {
      std::uint64_t table = 1;
      for (std::size_t j = 0; j < incident.size(); ++j) table *= d;
      std::vector<std::uint32_t> perm(table);
      std::vector<Phase> phases(table, Phase::one());
      for (std::uint64_t t = 0; t < table; ++t) {
        auto digits = decode(t, incident.size());
        for (std::size_t j = 0; j < incident.size(); ++j) {
          const auto& e = lat.edges[incident[j]];
          if (e.to == v)
            digits[j] = g.times(k, digits[j]);
          else
            digits[j] = g.times(digits[j], g.inv[k]);
        }
        perm[t] = static_cast<std::uint32_t>(encode(digits));
      }
      gens.emplace_back("V" + std::to_string(v + 1) + "g" + std::to_string(k),
                        MonomialOp::embedded(
                            LocalMonomialGate(std::vector<std::uint32_t>(incident.size(), d),
                                              std::move(perm), std::move(phases)),
                            std::vector<std::uint32_t>(incident.begin(), incident.end())));
    }
  }

  BasisVector seed;
  seed.v.assign(ne, 0);
  // Flat connections form one gauge orbit on a sphere; gauge maps fixing nothing
  // but the overall left action give |G|^(V-1) of them.
  std::uint64_t support = 1;
  for (std::uint32_t v = 0; v + 1 < lat.num_vertices; ++v) support *= d;
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "quantum_double"},
                     {"group_order", d},
                     {"vertices", lat.num_vertices},
                     {"edges", ne},
                     {"faces", lat.faces.size()},
                     {"expected_dimension", 1},
                     {"expected_support_size", support}}};
}

Family build_coset(const std::vector<std::uint32_t>& factors,
                   const std::vector<std::vector<std::uint32_t>>& h_gens,
                   const std::vector<std::uint32_t>& rep) {
  const std::size_t l = factors.size();
  if (l == 0) throw input_error("families.coset", "need at least one cyclic factor");
  for (auto d : factors)
    if (d < 2) throw input_error("families.coset", "every cyclic factor needs order >= 2");
  if (rep.size() != l)
    throw input_error("families.coset", "representative length does not match the factor list");
  for (std::size_t i = 0; i < l; ++i)
    if (rep[i] >= factors[i]) throw input_error("families.coset", "representative out of range");
  std::uint64_t total = 1;
  for (auto d : factors) {
    total *= d;
    if (total > (1ull << 20))
      throw refused_error("families.coset",
                          "group order exceeds 2^20; the dual-subgroup search enumerates "
                          "the whole group");
  }
  for (const auto& h : h_gens) {
    if (h.size() != l)
      throw input_error("families.coset", "subgroup generator length does not match the factors");
    for (std::size_t i = 0; i < l; ++i)
      if (h[i] >= factors[i])
        throw input_error("families.coset", "subgroup generator entry out of range");
  }

  auto decode = [&](std::uint64_t t) {
    std::vector<std::uint32_t> tuple(l);
    for (std::size_t i = l; i-- > 0;) {
      tuple[i] = static_cast<std::uint32_t>(t % factors[i]);
      t /= factors[i];
    }
    return tuple;
  };
  auto add_flat = [&](std::uint64_t t, const std::vector<std::uint32_t>& g) {
    std::vector<std::uint32_t> tuple = decode(t);
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < l; ++i) out = out * factors[i] + (tuple[i] + g[i]) % factors[i];
    return out;
  };
  auto span_of = [&](const std::vector<std::vector<std::uint32_t>>& gs) {
    std::vector<char> in(total, 0);
    in[0] = 1;
    std::deque<std::uint64_t> queue{0};
    while (!queue.empty()) {
      std::uint64_t t = queue.front();
      queue.pop_front();
      for (const auto& g : gs) {
        std::uint64_t u = add_flat(t, g);
        if (!in[u]) {
          in[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return in;
  };

  std::vector<char> in_h = span_of(h_gens);
  std::uint64_t h_size = std::uint64_t(std::count(in_h.begin(), in_h.end(), char(1)));

  // Dual subgroup: tuples whose character is 1 on every listed generator of H
  // (characters are homomorphisms, so the generators decide all of H). With
  // N = lcm of the factors, the character value on (g, h) is the N-th root at
  // exponent sum_i g_i h_i N / n_i.
  std::uint64_t bign = 1;
  for (auto d : factors) bign = std::lcm(bign, std::uint64_t(d));
  auto annihilates = [&](const std::vector<std::uint32_t>& g) {
    for (const auto& h : h_gens) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < l; ++i)
        s = (s + std::uint64_t(g[i]) * h[i] % bign * (bign / factors[i])) % bign;
      if (s != 0) return false;
    }
    return true;
  };

  std::vector<std::vector<std::uint32_t>> kgens;
  std::vector<char> span(total, 0);
  span[0] = 1;
  std::uint64_t dual_size = 0;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<std::uint32_t> g = decode(t);
    if (!annihilates(g)) continue;
    ++dual_size;
    if (!span[t]) {
      kgens.push_back(std::move(g));
      span = span_of(kgens);
    }
  }

  SiteSpace space(factors);
  std::vector<std::pair<std::string, MonomialOp>> gens;
  auto identity_on_site0 = [&]() {
    std::vector<std::uint32_t> ident(factors[0]);
    for (std::uint32_t v = 0; v < factors[0]; ++v) ident[v] = v;
    return MonomialOp::embedded(
        LocalMonomialGate({factors[0]}, std::move(ident),
                          std::vector<Phase>(factors[0], Phase::one())),
        {0});
  };
  for (std::size_t m = 0; m < h_gens.size(); ++m) {
    std::vector<MonomialOp> parts;
    for (std::size_t i = 0; i < l; ++i) {
      if (h_gens[m][i] == 0) continue;
      std::vector<std::uint32_t> perm(factors[i]);
      for (std::uint32_t v = 0; v < factors[i]; ++v) perm[v] = (v + h_gens[m][i]) % factors[i];
      parts.push_back(MonomialOp::embedded(
          LocalMonomialGate({factors[i]}, std::move(perm),
                            std::vector<Phase>(factors[i], Phase::one())),
          {static_cast<std::uint32_t>(i)}));
    }
    MonomialOp op = parts.empty() ? identity_on_site0() : MonomialOp::product(std::move(parts));
    gens.emplace_back("X" + std::to_string(m + 1), std::move(op));
  }
  for (std::size_t m = 0; m < kgens.size(); ++m) {
    // Character anchored at the representative: each site contributes the n_i-th
    // root at exponent k_i (v - rep_i), so the whole coset rep + H gets phase 1.
    std::vector<MonomialOp> parts;
    for (std::size_t i = 0; i < l; ++i) {
      if (kgens[m][i] == 0) continue;
      std::vector<std::uint32_t> ident(factors[i]);
      std::vector<Phase> phases(factors[i]);
      for (std::uint32_t v = 0; v < factors[i]; ++v) {
        ident[v] = v;
        phases[v] = Phase::root_of_unity(
            std::int64_t(kgens[m][i]) * (std::int64_t(v) - std::int64_t(rep[i])), factors[i]);
      }
      parts.push_back(MonomialOp::embedded(
          LocalMonomialGate({factors[i]}, std::move(ident), std::move(phases)),
          {static_cast<std::uint32_t>(i)}));
    }
    MonomialOp op = parts.empty() ? identity_on_site0() : MonomialOp::product(std::move(parts));
    gens.emplace_back("Z" + std::to_string(m + 1), std::move(op));
  }
  if (gens.empty())
    throw input_error("families.coset",
                      "no generators: give at least one subgroup generator or a nontrivial dual");

  BasisVector seed;
  seed.v = rep;
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "coset"},
                     {"factors", factors},
                     {"rep", rep},
                     {"subgroup_size", h_size},
                     {"dual_size", dual_size},
                     {"expected_dimension", 1},
                     {"expected_support_size", h_size}}};
}

Family build_coherent_prob(const ReversibleCircuit& c, std::uint32_t k) {
  if (c.n == 0) throw input_error("families.coherent", "circuit has no wires");
  if (k > c.n) throw input_error("families.coherent", "random-input count above the wire count");
  SiteSpace space = qubits(c.n);
  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::uint32_t i = 0; i < k; ++i)
    gens.emplace_back("P" + std::to_string(i + 1), make_circuit_x(c, i));
  for (std::uint32_t j = k; j < c.n; ++j)
    gens.emplace_back("D" + std::to_string(j - k + 1), make_circuit_z(c, j));
  BasisVector zero;
  zero.v.assign(c.n, 0);
  BasisVector seed = c.apply(zero);
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "coherent"},
                     {"n", c.n},
                     {"k", k},
                     {"expected_dimension", 1},
                     {"expected_support_size", std::uint64_t(1) << k}}};
}

Family build_laughlin(std::uint32_t n) {
  if (n < 2) throw input_error("families.laughlin", "need at least 2 sites");
  SiteSpace space = qudits(n, n);
  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    gens.emplace_back("A" + std::to_string(i + 1), swap_gate(i, i + 1, n, true));
  BasisVector seed;
  seed.v.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) seed.v[i] = i;
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "laughlin"},
                     {"n", n},
                     {"expected_dimension", 1},
                     {"expected_support_size", fact}}};
}

Family build_lme(std::uint32_t n, const std::string& diag_name) {
  if (n == 0) throw input_error("families.lme", "need at least 1 site");
  SiteSpace space = qubits(n);
  MonomialOp diag = make_lme_diag(diag_name, n);
  std::vector<std::pair<std::string, MonomialOp>> gens;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<MonomialOp> chain;
    chain.push_back(diag);
    chain.push_back(embedded_x(i));
    chain.push_back(invert(diag));
    gens.emplace_back("U" + std::to_string(i + 1), MonomialOp::product(std::move(chain)));
  }
  BasisVector seed;
  seed.v.assign(n, 0);
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "lme"},
                     {"fn", diag_name},
                     {"n", n},
                     {"expected_dimension", 1},
                     {"expected_support_size", std::uint64_t(1) << n}}};
}

Family build_pauli_family(const pauli::PauliStabilizerGroup& g) {
  SiteSpace space = qubits(g.num_qubits());
  std::vector<std::pair<std::string, MonomialOp>> gens;
  json labels = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    gens.emplace_back("G" + std::to_string(i + 1), pauli::pauli_to_monomial(g.gen(i)));
    labels.push_back(g.gen(i).str());
  }
  BasisVector seed = pauli::to_basis(pauli::support_representative(g));
  return Family{GeneratorSet(space, std::move(gens)),
                {seed},
                json{{"family", "pauli"}, {"stabilizers", std::move(labels)}}};
}

const FnRegistry& family_fn_registry() {
  static const FnRegistry reg = [] {
    FnRegistry r;
    r.builders["circuit_conj_x"] = [](const SiteSpace& space, const json& params) {
      ReversibleCircuit c = ReversibleCircuit::from_json(params.at("circuit"));
      if (space.dims != std::vector<std::uint32_t>(c.n, 2))
        throw input_error("families.circuit", "circuit width does not match the space");
      return make_circuit_x(c, params.at("site").get<std::uint32_t>());
    };
    r.builders["circuit_conj_z"] = [](const SiteSpace& space, const json& params) {
      ReversibleCircuit c = ReversibleCircuit::from_json(params.at("circuit"));
      if (space.dims != std::vector<std::uint32_t>(c.n, 2))
        throw input_error("families.circuit", "circuit width does not match the space");
      return make_circuit_z(c, params.at("site").get<std::uint32_t>());
    };
    r.builders["lme_diag"] = [](const SiteSpace& space, const json& params) {
      return make_lme_diag(params.at("fn").get<std::string>(),
                           static_cast<std::uint32_t>(space.dims.size()));
    };
    return r;
  }();
  return reg;
}

std::complex<double> aklt_trace(const BasisVector& y, int sigma) {
  using C = std::complex<double>;
  using Mat = std::array<C, 4>;  // row-major 2x2
  auto mul = [](const Mat& a, const Mat& b) {
    return Mat{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
               a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  const Mat ident{1, 0, 0, 1};
  const Mat px{0, 1, 1, 0};
  const Mat py{0, C(0, -1), C(0, 1), 0};
  const Mat pz{1, 0, 0, -1};
  const std::array<Mat, 4> by_index{ident, px, py, pz};
  if (sigma < 0 || sigma > 3) throw input_error("families.aklt", "sigma index must be 0..3");
  Mat m = by_index[std::size_t(sigma)];
  for (auto digit : y.v) {
    if (digit > 2) throw input_error("families.aklt", "digits must be 0..2");
    m = mul(m, by_index[std::size_t(digit) + 1]);
  }
  return m[0] + m[3];
}

}  // namespace msf
