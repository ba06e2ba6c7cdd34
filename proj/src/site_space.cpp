#include "msf/site_space.hpp"

#include <sstream>

#include "msf/errors.hpp"

namespace msf {

std::string BasisVector::str() const {
  bool digits = true;
  for (auto d : v)
    if (d > 9) digits = false;
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!digits && i) os << ',';
    os << v[i];
  }
  return os.str();
}

BasisVector BasisVector::parse(const std::string& text) {
  std::vector<std::uint32_t> vals;
  if (text.find(',') != std::string::npos) {
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) throw input_error("core.basis_vector", "empty component in '" + text + "'");
      std::size_t pos = 0;
      unsigned long x = 0;
      try {
        x = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        throw input_error("core.basis_vector", "bad component '" + tok + "'");
      }
      if (pos != tok.size()) throw input_error("core.basis_vector", "bad component '" + tok + "'");
      vals.push_back(static_cast<std::uint32_t>(x));
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw input_error("core.basis_vector", "bad digit '" + std::string(1, c) + "' in '" + text + "'");
      vals.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  }
  if (vals.empty()) throw input_error("core.basis_vector", "empty basis vector text");
  return BasisVector(std::move(vals));
}

std::size_t BvHash::operator()(const BasisVector& x) const noexcept {
  // FNV-1a over the digit stream.
  std::uint64_t h = 1469598103934665603ull;
  for (auto d : x.v) {
    h ^= d;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

SiteSpace::SiteSpace(std::vector<std::uint32_t> site_dims) : dims(std::move(site_dims)) {
  if (dims.empty()) throw input_error("core.space", "need at least one site");
  for (auto d : dims)
    if (d < 2) throw input_error("core.space", "every local dimension must be >= 2");
  total_dim = 1;
  for (auto d : dims) {
    if (total_dim > UINT64_MAX / (2 * static_cast<std::uint64_t>(d))) {  // keep headroom below 2^63
      huge = true;
      total_dim = 0;
      break;
    }
    total_dim *= d;
  }
}

bool SiteSpace::contains(const BasisVector& x) const {
  if (x.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (x[i] >= dims[i]) return false;
  return true;
}

std::uint64_t SiteSpace::flat_index(const BasisVector& x) const {
  if (huge) throw refused_error("core.space", "space too large for flat indexing");
  if (!contains(x)) throw input_error("core.space", "basis vector " + x.str() + " not in space");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + x[i];
  return idx;
}

BasisVector SiteSpace::from_flat(std::uint64_t idx) const {
  if (huge) throw refused_error("core.space", "space too large for flat indexing");
  if (idx >= total_dim) throw input_error("core.space", "flat index out of range");
  std::vector<std::uint32_t> vals(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    vals[i] = static_cast<std::uint32_t>(idx % dims[i]);
    idx /= dims[i];
  }
  return BasisVector(std::move(vals));
}

SiteSpace qubits(std::size_t n) { return SiteSpace(std::vector<std::uint32_t>(n, 2)); }

SiteSpace qudits(std::size_t n, std::uint32_t d) {
  return SiteSpace(std::vector<std::uint32_t>(n, d));
}

}  // namespace msf
