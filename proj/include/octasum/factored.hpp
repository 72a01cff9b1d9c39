#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace octasum {

struct ZeroInverse : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroBinding : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleHit : std::domain_error {
  using std::domain_error::domain_error;
};
struct BranchAmbiguity : std::domain_error {
  using std::domain_error::domain_error;
};

// Monomial c * prod var^(e/2): exponents are half-integers stored doubled.
struct Monomial {
  mpq_class c = 1;
  std::map<std::string, long> e2;

  static Monomial constant(mpq_class v);
  static Monomial var(const std::string &name, long e2 = 2);

  bool is_one() const { return c == 1 && e2.empty(); }
  bool is_constant() const { return e2.empty(); }

  Monomial operator*(const Monomial &o) const;
  Monomial inverse() const;
  Monomial pow_doubled(long p2) const; // raise to p2/2; throws on quarter powers

  bool operator==(const Monomial &o) const { return c == o.c && e2 == o.e2; }
  bool operator<(const Monomial &o) const;

  std::string to_string() const;
};

using ComplexPoint = std::map<std::string, std::complex<double>>;

// c * m0 * prod (1 - m_i)^{e_i}, kept in a unique canonical form:
// every factor monomial has its first nonzero exponent positive (by variable
// order), constant factors are folded into the lead, duplicates are merged.
class Factored {
public:
  Factored() : lead_(Monomial::constant(1)) {}

  static Factored zero();
  static Factored one() { return Factored(); }
  static Factored constant(mpq_class v);
  static Factored from_monomial(Monomial m);
  static Factored variable(const std::string &name);
  // (1 - m)^e
  static Factored one_minus(Monomial m, long e = 1);

  bool is_zero() const { return lead_.c == 0; }
  bool is_one() const { return lead_.is_one() && factors_.empty(); }
  bool is_monomial() const { return factors_.empty(); }

  const Monomial &lead() const { return lead_; }
  const std::vector<std::pair<Monomial, long>> &factors() const {
    return factors_;
  }

  Factored operator*(const Factored &o) const;
  Factored &operator*=(const Factored &o) { return *this = *this * o; }
  Factored inverse() const; // ZeroInverse on zero
  Factored pow(long e) const;
  bool operator==(const Factored &o) const;
  bool operator!=(const Factored &o) const { return !(*this == o); }

  Factored substitute(const std::map<std::string, Monomial> &bindings) const;
  // Renaming shortcut: each variable mapped to another bare variable.
  Factored rename(const std::map<std::string, std::string> &names) const;

  std::complex<double> eval_complex(const ComplexPoint &pt,
                                    bool *branch_ambiguous = nullptr) const;
  // Exact evaluation; requires all exponents integral.
  mpq_class eval_rational(const std::map<std::string, mpq_class> &pt) const;

  // d/d var of log(this) at pt.
  std::complex<double> dlog(const std::string &var, const ComplexPoint &pt) const;

  bool is_integral() const;
  std::vector<std::string> variables() const;
  bool depends_on(const std::string &var) const;

  std::string to_string() const;
  std::string to_json() const;

private:
  Monomial lead_;
  std::vector<std::pair<Monomial, long>> factors_; // sorted by monomial
  void push_factor(Monomial m, long e);
  void normalize();
};

// The shape triple (z, z' = 1/(1-z), z'' = 1 - 1/z) of a monomial shape.
struct ShapeTriple {
  Factored z, zp, zpp;
};
ShapeTriple shape_triple(const Monomial &z);

} // namespace octasum
