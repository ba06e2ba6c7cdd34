#include "msf/phase.hpp"

#include <cmath>
#include <numeric>

#include "msf/errors.hpp"

namespace msf {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

Phase Phase::root_of_unity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw input_error("core.phase", "root_of_unity needs den > 0");
  Phase p;
  p.exact_ = true;
  num = mod_pos(num, den);
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  p.num_ = num / g;
  p.den_ = den / g;
  if (p.num_ == 0) p.den_ = 1;
  return p;
}

Phase Phase::from_complex(std::complex<double> z) {
  double m = std::abs(z);
  if (std::abs(m - 1.0) > 1e-12)
    throw input_error("core.phase", "phase modulus " + std::to_string(m) + " is not 1");
  Phase p;
  p.exact_ = false;
  p.z_ = z / m;
  return p;
}

std::complex<double> Phase::to_complex() const {
  if (!exact_) return z_;
  // Quarter turns exactly; the rest via polar.
  if (den_ == 1) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? std::complex<double>(0.0, 1.0) : std::complex<double>(0.0, -1.0);
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(num_) / static_cast<double>(den_));
}

Phase Phase::operator*(const Phase& o) const {
  if (exact_ && o.exact_)
    return root_of_unity(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  std::complex<double> z = to_complex() * o.to_complex();
  return from_complex(z / std::abs(z));
}

Phase Phase::conj() const {
  if (exact_) return root_of_unity(-num_, den_);
  return from_complex(std::conj(z_));
}

Phase Phase::pow(std::int64_t e) const {
  if (exact_) return root_of_unity(num_ * e, den_);
  if (e == 0) return one();
  std::complex<double> z = std::polar(1.0, std::arg(z_) * static_cast<double>(e));
  return from_complex(z);
}

bool Phase::is_one() const {
  if (exact_) return num_ == 0;
  return dist_to_one() <= 1e-9;
}

double Phase::dist_to_one() const {
  return std::abs(to_complex() - std::complex<double>(1.0, 0.0));
}

bool Phase::same_phase(const Phase& o, double tol) const {
  if (exact_ && o.exact_) return num_ == o.num_ && den_ == o.den_;
  return std::abs(to_complex() - o.to_complex()) <= tol;
}

std::string Phase::str() const {
  if (exact_) {
    if (num_ == 0) return "1";
    if (den_ == 2) return "-1";
    if (den_ == 4) return num_ == 1 ? "i" : "-i";
    return "exp(2*pi*i*" + std::to_string(num_) + "/" + std::to_string(den_) + ")";
  }
  return std::to_string(z_.real()) + (z_.imag() < 0 ? "" : "+") + std::to_string(z_.imag()) + "i";
}

}  // namespace msf
