#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace octasum {

// Laurent polynomial in v = q^(1/2) with exact rational coefficients.
// Exponents are exponents of v, so q^k is stored at exponent 2k.
class Laurent {
public:
  Laurent() = default;

  static Laurent zero() { return Laurent(); }
  static Laurent one() { return monomial(0, 1); }
  static Laurent monomial(long v_exp, mpq_class coeff);
  // q^(e2/2), i.e. v^e2
  static Laurent q_half_power(long e2) { return monomial(e2, 1); }

  bool is_zero() const { return coef_.empty(); }
  bool is_one() const;
  bool is_monomial() const;
  long lo_exp() const; // smallest v-exponent with nonzero coefficient
  long hi_exp() const;
  mpq_class coeff(long v_exp) const;
  size_t term_count() const;

  Laurent operator-() const;
  Laurent operator+(const Laurent &o) const;
  Laurent operator-(const Laurent &o) const;
  Laurent operator*(const Laurent &o) const;
  Laurent &operator+=(const Laurent &o) { return *this = *this + o; }
  Laurent &operator*=(const Laurent &o) { return *this = *this * o; }
  bool operator==(const Laurent &o) const;
  bool operator!=(const Laurent &o) const { return !(*this == o); }

  Laurent mul_monomial(long v_exp, const mpq_class &coeff) const;

  // v -> v^(-1)
  Laurent invert_variable() const;

  // Exact division; nullopt when the division does not come out exact.
  std::optional<Laurent> divided_by(const Laurent &d) const;

  // True when the polynomial lies in Z[q,q^(-1)]: even v-exponents and
  // integer coefficients.
  bool is_integral_q_polynomial() const;

  mpq_class eval_rational(const mpq_class &v) const;
  std::complex<double> eval_complex(const std::complex<double> &v) const;

  // Rendering in the q-variable, ascending exponents: "q^-1 - 1 + 2*q^(3/2)".
  std::string to_string() const;
  std::string to_json() const; // list of [numerator, denominator, 2*q_exp]

private:
  // Dense storage: coef_[i] is the coefficient of v^(off_ + i).
  // Invariant: empty, or first and last entries nonzero.
  long off_ = 0;
  std::vector<mpq_class> coef_;
  void trim();
  friend struct LaurentOps;
};

// (q)_n = prod_{i=1..n} (1-q^i) for n >= 0, and 0 for n < 0.
Laurent qfact(long n);
// The reciprocal convention: 1/(q)_n = 0 for n < 0.
bool qfact_reciprocal_is_zero(long n);

// (q)_hi / (q)_lo under the extended conventions:
//   hi < 0        -> 0         ((q)_hi = 0)
//   lo < 0        -> 0         (1/(q)_lo = 0)
//   hi >= lo >= 0 -> prod_{i=lo+1..hi} (1-q^i)
// hi < lo is a usage error here (never a polynomial).
Laurent qfact_ratio(long hi, long lo);

// Gaussian binomial [b,k]_q; 0 outside 0 <= k <= b.
Laurent qbinomial(long b, long k);

struct QFactIdentityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Checks, for n in [lo,hi], the two extended-convention identities
//   (1-q^(n+1)) * ((q)_(n+1) - (1-q^(n+1)) (q)_n) = 0
//   (1-q^(n+1)) * (1/(q)_(n+1)) - 1/(q)_n = 0
// where reciprocals are tracked through the vanishing convention.
QFactIdentityReport annihilator_checks(long lo = -5, long hi = 20);

} // namespace octasum
