#include "msf/sim.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "msf/errors.hpp"

namespace msf {

std::uint64_t hoeffding_n(double eps, double delta) {
  if (!(eps > 0.0) || !(eps <= 1.0))
    throw input_error("sim.samples", "error target must lie in (0, 1]");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw input_error("sim.samples", "failure probability must lie in (0, 1)");
  double n = std::ceil((2.0 / (eps * eps)) * std::log(4.0 / delta));
  if (!(n < 9e18)) throw input_error("sim.samples", "sample count overflows");
  return static_cast<std::uint64_t>(n);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw input_error("sim.rng", "cannot draw from an empty range");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit || limit == 0) return r % n;
  }
}

const BasisVector& sample_orbit(const OrbitState& st, std::mt19937_64& rng) {
  return st.tree->members[uniform_below(rng, st.tree->members.size())];
}

BasisVector sample_random_word(const GeneratorSet& gens, const BasisVector& x,
                               std::uint64_t word_len, std::mt19937_64& rng) {
  if (!gens.space().contains(x))
    throw input_error("sim.walk", "start vector does not lie in the generator space");
  BasisVector cur = x;
  for (std::uint64_t i = 0; i < word_len && gens.size() > 0; ++i) {
    std::uint64_t pick = uniform_below(rng, 2 * gens.size());
    const MonomialOp& op = gens.op(pick / 2);
    cur = (pick % 2 == 0) ? apply(op, cur).first : apply_inverse(op, cur).first;
  }
  return cur;
}

namespace {

bool is_letter_form(const std::string& tok, std::size_t n) {
  if (tok.size() != n) return false;
  return std::all_of(tok.begin(), tok.end(),
                     [](char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; });
}

void add_letter(PauliWord& w, const SiteSpace& space, std::size_t site, char letter,
                std::uint32_t power) {
  std::uint32_t d = space.dims.at(site);
  if (letter == 'Y') {
    if (d != 2) throw input_error("sim.pauli", "letter Y needs a qubit site");
    w.a[site] = 1;
    w.b[site] = 1;
    w.gamma = w.gamma * Phase::imag_unit();
    return;
  }
  if (letter == 'X')
    w.a[site] = power % d;
  else if (letter == 'Z')
    w.b[site] = power % d;
  else
    throw input_error("sim.pauli", std::string("unknown letter '") + letter + "'");
}

}  // namespace

PauliWord parse_pauli_word(const std::string& text, const SiteSpace& space) {
  const std::size_t n = space.dims.size();
  PauliWord w;
  w.a.assign(n, 0);
  w.b.assign(n, 0);

  std::vector<std::string> toks;
  std::istringstream iss(text);
  for (std::string t; iss >> t;) toks.push_back(t);
  if (toks.empty()) throw input_error("sim.pauli", "empty observable");

  std::size_t start = 0;
  if (toks[0] == "+") {
    start = 1;
  } else if (toks[0] == "-") {
    w.gamma = Phase::minus_one();
    start = 1;
  } else if (toks[0] == "i" || toks[0] == "+i") {
    w.gamma = Phase::imag_unit();
    start = 1;
  } else if (toks[0] == "-i") {
    w.gamma = Phase::imag_unit().conj();
    start = 1;
  }
  if (start == toks.size()) throw input_error("sim.pauli", "sign with no letters");

  if (toks.size() - start == 1 && is_letter_form(toks[start], n)) {
    for (std::size_t site = 0; site < n; ++site) {
      char c = toks[start][site];
      if (c != 'I') add_letter(w, space, site, c, 1);
    }
    return w;
  }

  std::vector<char> used(n, 0);
  for (std::size_t i = start; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t.size() < 2 || (t[0] != 'X' && t[0] != 'Y' && t[0] != 'Z'))
      throw input_error("sim.pauli", "bad token '" + t + "': expected letter + site, like X0");
    std::size_t caret = t.find('^');
    std::string site_part = t.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    std::uint32_t power = 1;
    if (caret != std::string::npos) {
      if (t[0] == 'Y') throw input_error("sim.pauli", "Y takes no power");
      try {
        power = static_cast<std::uint32_t>(std::stoul(t.substr(caret + 1)));
      } catch (const std::exception&) {
        throw input_error("sim.pauli", "bad power in '" + t + "'");
      }
    }
    std::size_t site = 0;
    try {
      site = std::stoul(site_part);
    } catch (const std::exception&) {
      throw input_error("sim.pauli", "bad site in '" + t + "'");
    }
    if (site >= n)
      throw input_error("sim.pauli", "site " + std::to_string(site) + " out of range for " +
                                         std::to_string(n) + " sites");
    if (used[site]) throw input_error("sim.pauli", "site " + std::to_string(site) + " listed twice");
    used[site] = 1;
    add_letter(w, space, site, t[0], power);
  }
  return w;
}

PauliWord pauli_word_from_label(const pauli::PauliLabel& label) {
  PauliWord w;
  std::size_t n = label.num_qubits();
  w.a.assign(n, 0);
  w.b.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    w.a[i] = label.s.get(i) ? 1 : 0;
    w.b[i] = label.t.get(i) ? 1 : 0;
  }
  w.gamma = Phase::imag_unit().pow(label.k);
  return w;
}

StateAccess access_orbit_state(const OrbitState& st) {
  StateAccess a;
  a.size = st.size();
  a.draw = [st](std::mt19937_64& rng) { return sample_orbit(st, rng); };
  a.lookup = [st](const BasisVector& y) -> std::optional<Phase> {
    auto idx = st.tree->index_of(y);
    if (!idx) return std::nullopt;
    return st.xi[*idx];
  };
  return a;
}

StateAccess access_pauli_state(const pauli::PauliStabilizerGroup& g) {
  pauli::CosetSupport cs = pauli::coset_support(g);
  StateAccess a;
  a.size = cs.size();
  a.draw = [cs](std::mt19937_64& rng) {
    return pauli::to_basis(cs.element(uniform_below(rng, cs.size())));
  };
  a.lookup = [g, cs](const BasisVector& y) -> std::optional<Phase> {
    pauli::Gf2Vector yb = pauli::to_gf2(y);
    if (!cs.contains(yb)) return std::nullopt;
    return pauli::xi_fast(g, cs.rep, yb);
  };
  return a;
}

namespace {

void check_word(const PauliWord& p, const SiteSpace& space, const char* stage) {
  if (p.a.size() != space.dims.size() || p.b.size() != space.dims.size())
    throw input_error(stage, "observable site count does not match the space");
  for (std::size_t j = 0; j < space.dims.size(); ++j)
    if (p.a[j] >= space.dims[j] || p.b[j] >= space.dims[j])
      throw input_error(stage, "shift or phase power out of range at site " + std::to_string(j));
}

// F(y) = gamma * w^(b.y) xi(y) conj(xi(y+a)), or 0 when y+a leaves the support.
std::complex<double> sample_value(const StateAccess& st, const SiteSpace& space,
                                  const PauliWord& p, const BasisVector& y) {
  Phase xi_y = *st.lookup(y);
  BasisVector shifted = y;
  Phase zpart = Phase::one();
  for (std::size_t j = 0; j < space.dims.size(); ++j) {
    shifted.v[j] = (y.v[j] + p.a[j]) % space.dims[j];
    if (p.b[j]) zpart = zpart * Phase::root_of_unity(std::int64_t(p.b[j]) * y.v[j], space.dims[j]);
  }
  auto xi_shifted = st.lookup(shifted);
  if (!xi_shifted) return {0.0, 0.0};
  return p.gamma.to_complex() * zpart.to_complex() * xi_y.to_complex() *
         std::conj(xi_shifted->to_complex());
}

}  // namespace

Estimate estimate_pauli(const StateAccess& st, const SiteSpace& space, const PauliWord& p,
                        double eps, double delta, std::uint64_t seed) {
  check_word(p, space, "sim.estimate");
  if (st.size == 0) throw input_error("sim.estimate", "state has empty support");
  Estimate e;
  e.seed = seed;
  e.epsilon = eps;
  e.delta = delta;
  e.method = EstimateMethod::monte_carlo;
  e.samples_used = hoeffding_n(eps, delta);
  std::mt19937_64 rng(seed);
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t i = 0; i < e.samples_used; ++i) {
    BasisVector y = st.draw(rng);
    sum += sample_value(st, space, p, y);
  }
  e.value = sum / double(e.samples_used);
  return e;
}

std::complex<double> exact_pauli(const OrbitState& st, const SiteSpace& space,
                                 const PauliWord& p) {
  check_word(p, space, "sim.exact");
  StateAccess a = access_orbit_state(st);
  std::complex<double> sum{0.0, 0.0};
  for (const auto& y : st.tree->members) sum += sample_value(a, space, p, y);
  return sum / double(st.size());
}

Estimate estimate_local(const StateAccess& st, const SiteSpace& space,
                        const std::vector<std::uint32_t>& sites, const Eigen::MatrixXcd& obs,
                        double eps, double delta, std::uint64_t seed) {
  const std::size_t k = sites.size();
  if (k == 0) throw input_error("sim.local", "no sites given");
  if (k > 12) throw input_error("sim.local", "local observable larger than 12 sites");
  std::vector<char> used(space.dims.size(), 0);
  for (auto s : sites) {
    if (s >= space.dims.size())
      throw input_error("sim.local", "site " + std::to_string(s) + " out of range");
    if (space.dims[s] != 2)
      throw input_error("sim.local", "observable decomposition needs qubit sites");
    if (used[s]) throw input_error("sim.local", "site " + std::to_string(s) + " listed twice");
    used[s] = 1;
  }
  const std::uint64_t table = 1ull << k;
  if (obs.rows() != Eigen::Index(table) || obs.cols() != Eigen::Index(table))
    throw input_error("sim.local", "observable must be " + std::to_string(table) + " x " +
                                       std::to_string(table) + " for " + std::to_string(k) +
                                       " sites");
  if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw input_error("sim.local", "observable is not hermitian");

  // obs = sum over letter patterns of c * (i^{#Y} X(a) Z(b)); coefficients are real
  // because both sides are hermitian. Site order in the pattern follows `sites`,
  // first listed site most significant, matching the flat convention.
  struct Term {
    std::uint64_t a = 0, b = 0;  // bit j set = letter acts on sites[k-1-j]... stored msb-first below
    std::uint32_t ys = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;
  double c_ident = 0.0;
  std::uint64_t patterns = 1;
  for (std::size_t i = 0; i < k; ++i) patterns *= 4;
  for (std::uint64_t pat = 0; pat < patterns; ++pat) {
    std::uint64_t a = 0, b = 0;
    std::uint32_t ys = 0;
    std::uint64_t rest = pat;
    for (std::size_t j = 0; j < k; ++j) {  // j = 0 is the first listed site (msb)
      std::uint64_t letter = rest % 4;
      rest /= 4;
      std::uint64_t bit = 1ull << (k - 1 - j);
      if (letter == 1) a |= bit;                      // X
      if (letter == 2) b |= bit;                      // Z
      if (letter == 3) { a |= bit; b |= bit; ++ys; }  // Y = i X Z
    }
    // Tr(P obs) with P(y^a, y) = i^{#Y} (-1)^(b.y); P is hermitian, so
    // Tr(P obs) = sum_y P(y^a, y) obs(y, y^a) needs no conjugation.
    std::complex<double> tr{0.0, 0.0};
    std::complex<double> gamma = std::pow(std::complex<double>(0.0, 1.0), double(ys));
    for (std::uint64_t y = 0; y < table; ++y) {
      double sgn = (std::popcount(b & y) % 2) ? -1.0 : 1.0;
      tr += gamma * sgn * obs(y, y ^ a);
    }
    std::complex<double> c = tr / double(table);
    if (std::abs(c) <= 1e-12) continue;
    if (std::abs(c.imag()) > 1e-9)
      throw internal_error("sim.local", "non-real coefficient for a hermitian observable");
    if (a == 0 && b == 0)
      c_ident = c.real();
    else
      terms.push_back({a, b, ys, c.real()});
  }

  Estimate total;
  total.seed = seed;
  total.epsilon = eps;
  total.delta = delta;
  total.value = {c_ident, 0.0};
  total.method = terms.empty() ? EstimateMethod::exact_enumeration : EstimateMethod::monte_carlo;
  if (!terms.empty()) {
    double weight = 0.0;
    for (const auto& t : terms) weight += std::abs(t.c);
    double eps_term = eps / weight;
    double delta_term = delta / double(terms.size());
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
      const Term& t = terms[ti];
      PauliWord w;
      w.a.assign(space.dims.size(), 0);
      w.b.assign(space.dims.size(), 0);
      for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t bit = 1ull << (k - 1 - j);
        if (t.a & bit) w.a[sites[j]] = 1;
        if (t.b & bit) w.b[sites[j]] = 1;
      }
      w.gamma = Phase::imag_unit().pow(t.ys);
      Estimate part = estimate_pauli(st, space, w, eps_term, delta_term, seed + ti + 1);
      total.value += t.c * part.value;
      total.samples_used += part.samples_used;
    }
  }
  return total;
}

}  // namespace msf
