#pragma once
#include <complex>
#include <cstdint>
#include <string>

namespace msf {

// A unit-modulus scalar. Exact cyclotomic form exp(2*pi*i*num/den), kept reduced with
// 0 <= num < den, whenever the value is a root of unity we can track symbolically;
// floating form only for user-supplied phase functions. Products of exact phases stay
// exact and support decisions on them are exact, which is what keeps the support test
// honest: a phase is 1 iff num == 0, no epsilon involved.
class Phase {
public:
  Phase() : exact_(true), num_(0), den_(1) {}

  static Phase one() { return Phase(); }
  static Phase minus_one() { return root_of_unity(1, 2); }
  static Phase imag_unit() { return root_of_unity(1, 4); }
  // exp(2*pi*i*num/den); den > 0, num any integer (reduced mod den).
  static Phase root_of_unity(std::int64_t num, std::int64_t den);
  // |z| must be 1 within 1e-12, else input_error.
  static Phase from_complex(std::complex<double> z);

  bool exact() const { return exact_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::complex<double> to_complex() const;

  Phase operator*(const Phase& o) const;
  Phase conj() const;
  Phase pow(std::int64_t e) const;

  // Exact for cyclotomic; |z - 1| <= 1e-9 for floating phases.
  bool is_one() const;
  double dist_to_one() const;
  // Exact phases compare by reduced fraction; otherwise complex distance <= tol.
  bool same_phase(const Phase& o, double tol = 1e-12) const;

  std::string str() const;

private:
  bool exact_;
  std::int64_t num_ = 0, den_ = 1;     // reduced, 0 <= num < den (exact form)
  std::complex<double> z_{1.0, 0.0};   // floating form only
};

}  // namespace msf
