#pragma once
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace msf {

// One computational basis vector: a digit per site. Lexicographic order on values,
// which coincides with flat-index order (site 0 is most significant).
struct BasisVector {
  std::vector<std::uint32_t> v;

  BasisVector() = default;
  explicit BasisVector(std::vector<std::uint32_t> vals) : v(std::move(vals)) {}

  std::size_t size() const { return v.size(); }
  std::uint32_t operator[](std::size_t i) const { return v[i]; }
  std::uint32_t& operator[](std::size_t i) { return v[i]; }
  auto operator<=>(const BasisVector&) const = default;

  // "0012" when every digit is a single character, else "0,0,1,2".
  std::string str() const;
  // Accepts both forms emitted by str().
  static BasisVector parse(const std::string& text);
};

struct BvHash {
  std::size_t operator()(const BasisVector& x) const noexcept;
};

// Product structure of the computational basis: one local dimension per site.
// total_dim overflows a machine word for large spaces; then `huge` is set and
// flat indexing refuses.
struct SiteSpace {
  std::vector<std::uint32_t> dims;
  std::uint64_t total_dim = 1;  // meaningful only when !huge
  bool huge = false;

  explicit SiteSpace(std::vector<std::uint32_t> site_dims);

  std::size_t num_sites() const { return dims.size(); }
  bool contains(const BasisVector& x) const;
  std::uint64_t flat_index(const BasisVector& x) const;  // site 0 most significant
  BasisVector from_flat(std::uint64_t idx) const;
  bool operator==(const SiteSpace& o) const { return dims == o.dims; }
};

SiteSpace qubits(std::size_t n);
SiteSpace qudits(std::size_t n, std::uint32_t d);

}  // namespace msf
