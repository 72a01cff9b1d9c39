#include "octasum/factored.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace octasum {

Monomial Monomial::constant(mpq_class v) {
  Monomial m;
  m.c = std::move(v);
  return m;
}

Monomial Monomial::var(const std::string &name, long e2) {
  Monomial m;
  if (e2 != 0)
    m.e2[name] = e2;
  return m;
}

Monomial Monomial::operator*(const Monomial &o) const {
  Monomial r;
  r.c = c * o.c;
  if (r.c == 0)
    return Monomial::constant(0);
  r.e2 = e2;
  for (const auto &[v, e] : o.e2) {
    long &slot = r.e2[v];
    slot += e;
    if (slot == 0)
      r.e2.erase(v);
  }
  return r;
}

Monomial Monomial::inverse() const {
  if (c == 0)
    throw ZeroInverse("inverse of zero monomial");
  Monomial r;
  r.c = mpq_class(1) / c;
  for (const auto &[v, e] : e2)
    r.e2[v] = -e;
  return r;
}

Monomial Monomial::pow_doubled(long p2) const {
  Monomial r;
  if (p2 == 0)
    return r;
  if (p2 % 2 != 0) {
    // Raising to a half-integer power: exponents must stay half-integers
    // and the constant must stay rational.
    for (const auto &[v, e] : e2)
      if ((e * p2) % 2 != 0)
        throw std::domain_error("pow_doubled: quarter power of " + v);
    if (c != 1) {
      // allow square roots of perfect rational squares only
      mpz_class num = c.get_num(), den = c.get_den();
      mpz_class sn, sd;
      if (c < 0 || !mpz_perfect_square_p(num.get_mpz_t()) ||
          !mpz_perfect_square_p(den.get_mpz_t()))
        throw std::domain_error("pow_doubled: irrational constant power");
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      mpq_class root(sn, sd);
      root.canonicalize();
      mpq_class acc = 1;
      long whole = p2; // root^p2
      mpq_class base = whole >= 0 ? root : mpq_class(1) / root;
      for (long i = 0; i < std::llabs(whole); ++i)
        acc *= base;
      r.c = acc;
    }
    for (const auto &[v, e] : e2)
      r.e2[v] = e * p2 / 2;
    return r;
  }
  long p = p2 / 2;
  mpq_class acc = 1;
  mpq_class base = p >= 0 ? c : (c == 0 ? throw ZeroInverse("0^negative")
                                        : mpq_class(1) / c);
  for (long i = 0; i < std::llabs(p); ++i)
    acc *= base;
  r.c = acc;
  if (r.c == 0)
    return Monomial::constant(0);
  for (const auto &[v, e] : e2) {
    long ne = e * p;
    if (ne != 0)
      r.e2[v] = ne;
  }
  return r;
}

bool Monomial::operator<(const Monomial &o) const {
  if (e2 != o.e2)
    return e2 < o.e2;
  return c < o.c;
}

namespace {

std::string exp_str(long e2) {
  if (e2 % 2 == 0)
    return std::to_string(e2 / 2);
  return "(" + std::to_string(e2) + "/2)";
}

} // namespace

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool need_star = false;
  if (c != 1 || e2.empty()) {
    os << c.get_str();
    need_star = true;
  }
  for (const auto &[v, e] : e2) {
    if (need_star)
      os << "*";
    need_star = true;
    os << v;
    if (e != 2)
      os << "^" << exp_str(e);
  }
  return os.str();
}

Factored Factored::zero() {
  Factored f;
  f.lead_ = Monomial::constant(0);
  return f;
}

Factored Factored::constant(mpq_class v) {
  Factored f;
  f.lead_ = Monomial::constant(std::move(v));
  return f;
}

Factored Factored::from_monomial(Monomial m) {
  Factored f;
  f.lead_ = std::move(m);
  if (f.lead_.c == 0)
    return zero();
  return f;
}

Factored Factored::variable(const std::string &name) {
  return from_monomial(Monomial::var(name));
}

Factored Factored::one_minus(Monomial m, long e) {
  Factored f;
  f.push_factor(std::move(m), e);
  f.normalize();
  return f;
}

void Factored::push_factor(Monomial m, long e) {
  if (e == 0)
    return;
  if (m.c == 0)
    return; // (1 - 0) = 1
  if (m.is_constant()) {
    // (1 - c)^e is a scalar
    mpq_class s = 1 - m.c;
    if (s == 0) {
      if (e > 0) {
        lead_ = Monomial::constant(0);
        factors_.clear();
        return;
      }
      throw ZeroInverse("factor (1-1) with negative exponent");
    }
    Monomial scale = Monomial::constant(s).pow_doubled(2 * e);
    lead_ = lead_ * scale;
    return;
  }
  // Normal form: first nonzero exponent positive, via
  // (1 - m)^e = (-1)^e m^e (1 - m^{-1})^e.
  if (m.e2.begin()->second < 0) {
    Monomial scale = m.pow_doubled(2 * e);
    if (e % 2 != 0)
      scale.c = -scale.c;
    lead_ = lead_ * scale;
    m = m.inverse();
  }
  factors_.emplace_back(std::move(m), e);
}

void Factored::normalize() {
  if (lead_.c == 0) {
    factors_.clear();
    lead_ = Monomial::constant(0);
    return;
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::vector<std::pair<Monomial, long>> merged;
  for (auto &f : factors_) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(std::move(f));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto &f) { return f.second == 0; }),
               merged.end());
  factors_ = std::move(merged);
}

Factored Factored::operator*(const Factored &o) const {
  if (is_zero() || o.is_zero())
    return zero();
  Factored r;
  r.lead_ = lead_ * o.lead_;
  r.factors_ = factors_;
  for (const auto &[m, e] : o.factors_)
    r.factors_.emplace_back(m, e);
  r.normalize();
  return r;
}

Factored Factored::inverse() const {
  if (is_zero())
    throw ZeroInverse("inverse of zero");
  Factored r;
  r.lead_ = lead_.inverse();
  for (const auto &[m, e] : factors_)
    r.factors_.emplace_back(m, -e);
  r.normalize();
  return r;
}

Factored Factored::pow(long e) const {
  if (e == 0)
    return one();
  if (is_zero()) {
    if (e < 0)
      throw ZeroInverse("0^negative");
    return zero();
  }
  Factored r;
  r.lead_ = lead_.pow_doubled(2 * e);
  for (const auto &[m, k] : factors_)
    r.factors_.emplace_back(m, k * e);
  r.normalize();
  return r;
}

bool Factored::operator==(const Factored &o) const {
  return lead_ == o.lead_ && factors_ == o.factors_;
}

Factored Factored::substitute(
    const std::map<std::string, Monomial> &bindings) const {
  for (const auto &[v, m] : bindings)
    if (m.c == 0)
      throw ZeroBinding("binding of " + v + " to zero");
  auto apply = [&](const Monomial &m) {
    Monomial out = Monomial::constant(m.c);
    for (const auto &[v, e] : m.e2) {
      auto it = bindings.find(v);
      if (it == bindings.end())
        out = out * Monomial::var(v, e);
      else
        out = out * it->second.pow_doubled(e);
    }
    return out;
  };
  if (is_zero())
    return zero();
  Factored r;
  r.lead_ = apply(lead_);
  for (const auto &[m, e] : factors_)
    r.push_factor(apply(m), e);
  r.normalize();
  return r;
}

Factored Factored::rename(const std::map<std::string, std::string> &names) const {
  std::map<std::string, Monomial> bindings;
  for (const auto &[from, to] : names)
    bindings[from] = Monomial::var(to);
  return substitute(bindings);
}

std::complex<double> Factored::eval_complex(const ComplexPoint &pt,
                                            bool *branch_ambiguous) const {
  if (branch_ambiguous)
    *branch_ambiguous = false;
  auto eval_mono = [&](const Monomial &m) {
    std::complex<double> acc(m.c.get_d(), 0.0);
    for (const auto &[v, e] : m.e2) {
      auto it = pt.find(v);
      if (it == pt.end())
        throw std::invalid_argument("eval_complex: unbound variable " + v);
      if (e % 2 == 0) {
        acc *= std::pow(it->second, static_cast<double>(e / 2));
      } else {
        if (branch_ambiguous)
          *branch_ambiguous = true;
        acc *= std::pow(it->second, 0.5 * static_cast<double>(e));
      }
    }
    return acc;
  };
  std::complex<double> r = eval_mono(lead_);
  for (const auto &[m, e] : factors_) {
    std::complex<double> f = 1.0 - eval_mono(m);
    if (std::abs(f) == 0.0 && e < 0)
      throw PoleHit("pole: factor vanishes with negative exponent");
    r *= std::pow(f, static_cast<double>(e));
  }
  return r;
}

mpq_class
Factored::eval_rational(const std::map<std::string, mpq_class> &pt) const {
  auto eval_mono = [&](const Monomial &m) {
    mpq_class acc = m.c;
    for (const auto &[v, e] : m.e2) {
      if (e % 2 != 0)
        throw BranchAmbiguity("eval_rational on half-integer exponent of " + v);
      auto it = pt.find(v);
      if (it == pt.end())
        throw std::invalid_argument("eval_rational: unbound variable " + v);
      if (it->second == 0)
        throw PoleHit("eval_rational at zero value of " + v);
      long p = e / 2;
      mpq_class base = p >= 0 ? it->second : mpq_class(1) / it->second;
      for (long i = 0; i < std::llabs(p); ++i)
        acc *= base;
    }
    return acc;
  };
  mpq_class r = eval_mono(lead_);
  for (const auto &[m, e] : factors_) {
    mpq_class f = 1 - eval_mono(m);
    if (f == 0) {
      if (e < 0)
        throw PoleHit("pole: factor vanishes with negative exponent");
      return 0;
    }
    mpq_class base = e >= 0 ? f : mpq_class(1) / f;
    for (long i = 0; i < std::llabs(e); ++i)
      r *= base;
  }
  return r;
}

std::complex<double> Factored::dlog(const std::string &var,
                                    const ComplexPoint &pt) const {
  auto it = pt.find(var);
  if (it == pt.end())
    throw std::invalid_argument("dlog: unbound variable " + var);
  const std::complex<double> x = it->second;
  auto mono_deg = [&](const Monomial &m) {
    auto e = m.e2.find(var);
    return e == m.e2.end() ? 0.0 : 0.5 * static_cast<double>(e->second);
  };
  auto eval_mono = [&](const Monomial &m) {
    std::complex<double> acc(m.c.get_d(), 0.0);
    for (const auto &[v, e] : m.e2)
      acc *= std::pow(pt.at(v), 0.5 * static_cast<double>(e));
    return acc;
  };
  std::complex<double> r = mono_deg(lead_) / x;
  for (const auto &[m, e] : factors_) {
    double d = mono_deg(m);
    if (d == 0.0)
      continue;
    std::complex<double> mv = eval_mono(m);
    r += static_cast<double>(e) * (-mv * d / x) / (1.0 - mv);
  }
  return r;
}

bool Factored::is_integral() const {
  auto ok = [](const Monomial &m) {
    for (const auto &[v, e] : m.e2) {
      (void)v;
      if (e % 2 != 0)
        return false;
    }
    return true;
  };
  if (!ok(lead_))
    return false;
  for (const auto &[m, e] : factors_) {
    (void)e;
    if (!ok(m))
      return false;
  }
  return true;
}

std::vector<std::string> Factored::variables() const {
  std::map<std::string, bool> seen;
  for (const auto &[v, e] : lead_.e2)
    seen[v] = true;
  for (const auto &[m, e] : factors_)
    for (const auto &[v, ee] : m.e2)
      seen[v] = true;
  std::vector<std::string> out;
  for (const auto &[v, b] : seen)
    out.push_back(v);
  return out;
}

bool Factored::depends_on(const std::string &var) const {
  if (lead_.e2.count(var))
    return true;
  for (const auto &[m, e] : factors_)
    if (m.e2.count(var))
      return true;
  return false;
}

std::string Factored::to_string() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  os << lead_.to_string();
  for (const auto &[m, e] : factors_) {
    os << " * (1 - " << m.to_string() << ")";
    if (e != 1)
      os << "^" << e;
  }
  return os.str();
}

std::string Factored::to_json() const {
  std::ostringstream os;
  auto mono_json = [](const Monomial &m) {
    std::ostringstream mo;
    mo << "{\"c\":\"" << m.c.get_str() << "\",\"e2\":{";
    bool first = true;
    for (const auto &[v, e] : m.e2) {
      if (!first)
        mo << ",";
      first = false;
      mo << "\"" << v << "\":" << e;
    }
    mo << "}}";
    return mo.str();
  };
  os << "{\"lead\":" << mono_json(lead_) << ",\"factors\":[";
  bool first = true;
  for (const auto &[m, e] : factors_) {
    if (!first)
      os << ",";
    first = false;
    os << "{\"m\":" << mono_json(m) << ",\"e\":" << e << "}";
  }
  os << "]}";
  return os.str();
}

ShapeTriple shape_triple(const Monomial &z) {
  ShapeTriple t;
  t.z = Factored::from_monomial(z);
  t.zp = Factored::one_minus(z, -1);
  // z'' = 1 - 1/z = -z^{-1} (1 - z)
  Monomial neg_inv = z.inverse();
  neg_inv.c = -neg_inv.c;
  t.zpp = Factored::from_monomial(neg_inv) * Factored::one_minus(z, 1);
  return t;
}

} // namespace octasum
