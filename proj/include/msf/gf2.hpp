#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace msf::gf2 {

// Bit-packed GF(2) vector: bit i lives in word i/64.
class Gf2Vector {
public:
  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static Gf2Vector from_bits(const std::vector<int>& bits);
  static Gf2Vector from_string(const std::string& bits);  // "0101"

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i, bool b);
  void flip(std::size_t i) { w_[i / 64] ^= (1ull << (i % 64)); }

  Gf2Vector& operator^=(const Gf2Vector& o);
  Gf2Vector operator^(const Gf2Vector& o) const;
  bool dot(const Gf2Vector& o) const;  // parity of AND
  bool is_zero() const;
  std::size_t popcount() const;

  bool operator==(const Gf2Vector& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator<(const Gf2Vector& o) const;  // lexicographic by bit index
  std::string str() const;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row-major GF(2) matrix over bit-packed rows.
class Gf2Matrix {
public:
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Gf2Vector(cols)) {}
  static Gf2Matrix from_rows(std::vector<Gf2Vector> rows);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_; }
  const Gf2Vector& row(std::size_t i) const { return rows_.at(i); }
  Gf2Vector& row(std::size_t i) { return rows_.at(i); }

  // Reduced row echelon form; returns pivot column per pivot row.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Canonical nullspace basis: one vector per free column, in ascending free-column
  // order, with the free bit set and pivot bits read off the rref.
  std::vector<Gf2Vector> nullspace() const;
  // One solution of A x = b with free variables at 0, or nullopt if inconsistent.
  std::optional<Gf2Vector> solve(const Gf2Vector& b) const;
  // Basis of the row space: the nonzero rref rows.
  std::vector<Gf2Vector> row_basis() const;

private:
  std::size_t cols_;
  std::vector<Gf2Vector> rows_;
};

}  // namespace msf::gf2
