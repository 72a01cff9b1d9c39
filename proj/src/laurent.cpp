#include "octasum/laurent.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace octasum {

void Laurent::trim() {
  size_t lo = 0;
  while (lo < coef_.size() && coef_[lo] == 0)
    ++lo;
  if (lo == coef_.size()) {
    coef_.clear();
    off_ = 0;
    return;
  }
  size_t hi = coef_.size();
  while (hi > lo && coef_[hi - 1] == 0)
    --hi;
  if (lo > 0 || hi < coef_.size()) {
    std::vector<mpq_class> trimmed(coef_.begin() + lo, coef_.begin() + hi);
    coef_.swap(trimmed);
    off_ += static_cast<long>(lo);
  }
}

Laurent Laurent::monomial(long v_exp, mpq_class coeff) {
  Laurent p;
  if (coeff != 0) {
    p.off_ = v_exp;
    p.coef_.push_back(std::move(coeff));
  }
  return p;
}

bool Laurent::is_one() const {
  return coef_.size() == 1 && off_ == 0 && coef_[0] == 1;
}

bool Laurent::is_monomial() const { return coef_.size() == 1; }

long Laurent::lo_exp() const {
  if (is_zero())
    throw std::logic_error("lo_exp of zero polynomial");
  return off_;
}

long Laurent::hi_exp() const {
  if (is_zero())
    throw std::logic_error("hi_exp of zero polynomial");
  return off_ + static_cast<long>(coef_.size()) - 1;
}

mpq_class Laurent::coeff(long v_exp) const {
  long i = v_exp - off_;
  if (i < 0 || i >= static_cast<long>(coef_.size()))
    return 0;
  return coef_[i];
}

size_t Laurent::term_count() const {
  size_t n = 0;
  for (const auto &c : coef_)
    if (c != 0)
      ++n;
  return n;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto &c : r.coef_)
    c = -c;
  return r;
}

Laurent Laurent::operator+(const Laurent &o) const {
  if (is_zero())
    return o;
  if (o.is_zero())
    return *this;
  long lo = std::min(off_, o.off_);
  long hi = std::max(off_ + static_cast<long>(coef_.size()),
                     o.off_ + static_cast<long>(o.coef_.size()));
  Laurent r;
  r.off_ = lo;
  r.coef_.assign(static_cast<size_t>(hi - lo), mpq_class(0));
  for (size_t i = 0; i < coef_.size(); ++i)
    r.coef_[static_cast<size_t>(off_ - lo) + i] = coef_[i];
  for (size_t i = 0; i < o.coef_.size(); ++i)
    r.coef_[static_cast<size_t>(o.off_ - lo) + i] += o.coef_[i];
  r.trim();
  return r;
}

Laurent Laurent::operator-(const Laurent &o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent &o) const {
  if (is_zero() || o.is_zero())
    return zero();
  Laurent r;
  r.off_ = off_ + o.off_;
  r.coef_.assign(coef_.size() + o.coef_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0)
      continue;
    for (size_t j = 0; j < o.coef_.size(); ++j) {
      if (o.coef_[j] == 0)
        continue;
      r.coef_[i + j] += coef_[i] * o.coef_[j];
    }
  }
  r.trim();
  return r;
}

bool Laurent::operator==(const Laurent &o) const {
  return off_ == o.off_ && coef_ == o.coef_;
}

Laurent Laurent::mul_monomial(long v_exp, const mpq_class &coeff) const {
  if (coeff == 0)
    return zero();
  Laurent r = *this;
  r.off_ += v_exp;
  for (auto &c : r.coef_)
    c *= coeff;
  return r;
}

Laurent Laurent::invert_variable() const {
  Laurent r;
  if (is_zero())
    return r;
  r.off_ = -(off_ + static_cast<long>(coef_.size()) - 1);
  r.coef_.assign(coef_.rbegin(), coef_.rend());
  return r;
}

std::optional<Laurent> Laurent::divided_by(const Laurent &d) const {
  if (d.is_zero())
    return std::nullopt;
  if (is_zero())
    return zero();
  Laurent rem = *this;
  Laurent quo;
  const mpq_class &dlead = d.coef_.back();
  long dhi = d.off_ + static_cast<long>(d.coef_.size()) - 1;
  long budget = static_cast<long>(coef_.size() + d.coef_.size()) + 8;
  while (!rem.is_zero() && rem.hi_exp() - rem.lo_exp() >= dhi - d.off_) {
    if (--budget < 0)
      return std::nullopt;
    long shift = rem.hi_exp() - dhi;
    mpq_class factor = rem.coef_.back() / dlead;
    quo += monomial(shift, factor);
    rem = rem - d.mul_monomial(shift, factor);
  }
  if (!rem.is_zero())
    return std::nullopt;
  return quo;
}

bool Laurent::is_integral_q_polynomial() const {
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0)
      continue;
    long e = off_ + static_cast<long>(i);
    if (e % 2 != 0)
      return false;
    if (coef_[i].get_den() != 1)
      return false;
  }
  return true;
}

mpq_class Laurent::eval_rational(const mpq_class &v) const {
  if (is_zero())
    return 0;
  if (v == 0)
    throw std::domain_error("eval_rational at v = 0");
  // Horner on the dense block, then multiply by v^off_.
  mpq_class acc = 0;
  for (size_t i = coef_.size(); i-- > 0;)
    acc = acc * v + coef_[i];
  mpq_class vp = 1;
  long e = off_;
  mpq_class base = e >= 0 ? v : mpq_class(1) / v;
  for (long i = 0; i < std::llabs(e); ++i)
    vp *= base;
  return acc * vp;
}

std::complex<double> Laurent::eval_complex(const std::complex<double> &v) const {
  std::complex<double> acc = 0;
  for (size_t i = coef_.size(); i-- > 0;)
    acc = acc * v + coef_[i].get_d();
  return acc * std::pow(v, static_cast<double>(off_));
}

namespace {

std::string q_power_str(long e2) {
  // exponent of v = e2, i.e. q^(e2/2)
  std::ostringstream os;
  if (e2 % 2 == 0) {
    long e = e2 / 2;
    if (e == 1)
      os << "q";
    else
      os << "q^" << e;
  } else {
    os << "q^(" << e2 << "/2)";
  }
  return os.str();
}

} // namespace

std::string Laurent::to_string() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coef_.size(); ++i) {
    const mpq_class &c = coef_[i];
    if (c == 0)
      continue;
    long e2 = off_ + static_cast<long>(i);
    mpq_class a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0)
        a = -a;
    }
    first = false;
    if (e2 == 0) {
      os << a.get_str();
    } else {
      if (a != 1)
        os << a.get_str() << "*";
      os << q_power_str(e2);
    }
  }
  return os.str();
}

std::string Laurent::to_json() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0)
      continue;
    if (!first)
      os << ",";
    first = false;
    long e2 = off_ + static_cast<long>(i);
    os << "[" << coef_[i].get_num().get_str() << ","
       << coef_[i].get_den().get_str() << "," << e2 << "]";
  }
  os << "]";
  return os.str();
}

Laurent qfact(long n) {
  if (n < 0)
    return Laurent::zero();
  Laurent r = Laurent::one();
  for (long i = 1; i <= n; ++i)
    r *= (Laurent::one() - Laurent::q_half_power(2 * i));
  return r;
}

bool qfact_reciprocal_is_zero(long n) { return n < 0; }

Laurent qfact_ratio(long hi, long lo) {
  if (hi < 0 || lo < 0)
    return Laurent::zero();
  if (hi < lo)
    throw std::invalid_argument("qfact_ratio: hi < lo is not a polynomial");
  Laurent r = Laurent::one();
  for (long i = lo + 1; i <= hi; ++i)
    r *= (Laurent::one() - Laurent::q_half_power(2 * i));
  return r;
}

Laurent qbinomial(long b, long k) {
  if (k < 0 || b < 0 || k > b)
    return Laurent::zero();
  k = std::min(k, b - k);
  // Pascal recurrence [b,k] = [b-1,k-1] + q^k [b-1,k]; row by row.
  std::vector<Laurent> row(static_cast<size_t>(k) + 1, Laurent::zero());
  row[0] = Laurent::one();
  for (long m = 1; m <= b; ++m) {
    for (long j = std::min<long>(k, m); j >= 1; --j)
      row[static_cast<size_t>(j)] =
          row[static_cast<size_t>(j - 1)] +
          row[static_cast<size_t>(j)].mul_monomial(2 * j, 1);
  }
  return row[static_cast<size_t>(k)];
}

QFactIdentityReport annihilator_checks(long lo, long hi) {
  QFactIdentityReport rep;
  auto fail = [&](long n, const std::string &what) {
    rep.ok = false;
    rep.failures.push_back("n=" + std::to_string(n) + ": " + what);
  };
  for (long n = lo; n <= hi; ++n) {
    Laurent factor = Laurent::one() - Laurent::q_half_power(2 * (n + 1));
    // (1-q^(n+1)) * ((q)_(n+1) - (1-q^(n+1)) (q)_n) = 0
    Laurent lhs = factor * (qfact(n + 1) - factor * qfact(n));
    if (!lhs.is_zero())
      fail(n, "(1-qQ)(E-(1-qQ)) identity");
    // (1-q^(n+1)) / (q)_(n+1) - 1/(q)_n = 0, tracked via the zero
    // conventions: both reciprocals vanish iff index < 0; otherwise the
    // identity is (1-q^(n+1)) (q)_n - (q)_(n+1) = 0 after clearing.
    bool lhs_zero = qfact_reciprocal_is_zero(n + 1);
    bool rhs_zero = qfact_reciprocal_is_zero(n);
    if (lhs_zero && rhs_zero)
      continue; // 0 - 0 = 0
    if (lhs_zero != rhs_zero) {
      // only possible transition is n = -1: 1/(q)_0 = 1 vs (1-q^0)/(q)_0 = 0
      if (n == -1) {
        if (!(factor * Laurent::one() - Laurent::zero()).is_zero())
          fail(n, "((1-qQ)E-1) identity at the boundary");
      } else {
        fail(n, "reciprocal convention mismatch");
      }
      continue;
    }
    Laurent cleared = factor * qfact(n) - qfact(n + 1);
    if (!cleared.is_zero())
      fail(n, "((1-qQ)E-1) identity");
  }
  return rep;
}

} // namespace octasum
