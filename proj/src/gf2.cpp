#include "msf/gf2.hpp"

#include <bit>

#include "msf/errors.hpp"

namespace msf::gf2 {

Gf2Vector Gf2Vector::from_bits(const std::vector<int>& bits) {
  Gf2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) v.set(i, bits[i] != 0);
  return v;
}

Gf2Vector Gf2Vector::from_string(const std::string& bits) {
  Gf2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw input_error("gf2", "bad bit character '" + std::string(1, bits[i]) + "'");
    v.set(i, bits[i] == '1');
  }
  return v;
}

void Gf2Vector::set(std::size_t i, bool b) {
  if (b)
    w_[i / 64] |= (1ull << (i % 64));
  else
    w_[i / 64] &= ~(1ull << (i % 64));
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& o) {
  if (n_ != o.n_) throw input_error("gf2", "xor of vectors of different lengths");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

Gf2Vector Gf2Vector::operator^(const Gf2Vector& o) const {
  Gf2Vector r = *this;
  r ^= o;
  return r;
}

bool Gf2Vector::dot(const Gf2Vector& o) const {
  if (n_ != o.n_) throw input_error("gf2", "dot of vectors of different lengths");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= (w_[i] & o.w_[i]);
  return std::popcount(acc) & 1;
}

bool Gf2Vector::is_zero() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::size_t Gf2Vector::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Gf2Vector::operator<(const Gf2Vector& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = 0; i < n_; ++i) {
    bool a = get(i), b = o.get(i);
    if (a != b) return b;  // 0 sorts before 1 at the first differing bit
  }
  return false;
}

std::string Gf2Vector::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

Gf2Matrix Gf2Matrix::from_rows(std::vector<Gf2Vector> rows) {
  if (rows.empty()) throw input_error("gf2", "matrix needs at least one row");
  Gf2Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw input_error("gf2", "ragged rows");
    m.rows_[i] = std::move(rows[i]);
  }
  return m;
}

std::vector<std::size_t> Gf2Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows_.size() && !rows_[sel].get(c)) ++sel;
    if (sel == rows_.size()) continue;
    std::swap(rows_[r], rows_[sel]);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t Gf2Matrix::rank() const {
  Gf2Matrix copy = *this;
  return copy.rref().size();
}

std::vector<Gf2Vector> Gf2Matrix::nullspace() const {
  Gf2Matrix copy = *this;
  std::vector<std::size_t> pivots = copy.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Gf2Vector> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Gf2Vector x(cols_);
    x.set(f, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (copy.rows_[i].get(f)) x.set(pivots[i], true);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Gf2Vector> Gf2Matrix::solve(const Gf2Vector& b) const {
  if (b.size() != rows_.size()) throw input_error("gf2", "rhs length does not match row count");
  // Eliminate on an augmented copy.
  Gf2Matrix aug(rows_.size(), cols_ + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c) aug.rows_[i].set(c, rows_[i].get(c));
    aug.rows_[i].set(cols_, b.get(i));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < aug.rows_.size(); ++c) {
    std::size_t sel = r;
    while (sel < aug.rows_.size() && !aug.rows_[sel].get(c)) ++sel;
    if (sel == aug.rows_.size()) continue;
    std::swap(aug.rows_[r], aug.rows_[sel]);
    for (std::size_t i = 0; i < aug.rows_.size(); ++i)
      if (i != r && aug.rows_[i].get(c)) aug.rows_[i] ^= aug.rows_[r];
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < aug.rows_.size(); ++i)
    if (aug.rows_[i].get(cols_)) return std::nullopt;  // 0 = 1 row
  Gf2Vector x(cols_);
  for (std::size_t i = 0; i < pivots.size(); ++i) x.set(pivots[i], aug.rows_[i].get(cols_));
  return x;
}

std::vector<Gf2Vector> Gf2Matrix::row_basis() const {
  Gf2Matrix copy = *this;
  std::size_t rk = copy.rref().size();
  std::vector<Gf2Vector> rows;
  for (std::size_t i = 0; i < rk; ++i) rows.push_back(copy.rows_[i]);
  return rows;
}

}  // namespace msf::gf2
