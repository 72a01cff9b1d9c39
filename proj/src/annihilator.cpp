#include "octasum/annihilator.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace octasum {

Annihilator::Annihilator(const Diagram &d) : d_(&d) {
  if (d.crossing_count() == 0)
    throw std::invalid_argument("annihilator needs a crossing");
}

std::string Annihilator::var_Qc(int crossing_id) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "Qc%02d", crossing_id);
  return buf;
}

Monomial Annihilator::q_arc(int l) const {
  Monomial z = Monomial::var(var_Q0());
  for (int j = 2; j <= l; ++j) {
    int ci = d_->crossing_of_pass(j);
    z = z * Monomial::var(var_Qc(ci), d_->pass_is_over(j) ? 2 : -2);
  }
  return z;
}

Monomial Annihilator::q_a(int ci) const {
  int o = d_->crossing(ci).over_label;
  return q_arc(o == 1 ? d_->arc_count() : o - 1);
}
Monomial Annihilator::q_ap(int ci) const {
  return q_arc(d_->crossing(ci).over_label);
}
Monomial Annihilator::q_b(int ci) const {
  int u = d_->crossing(ci).under_label;
  return q_arc(u == 1 ? d_->arc_count() : u - 1);
}
Monomial Annihilator::q_bp(int ci) const {
  return q_arc(d_->crossing(ci).under_label);
}

namespace {

Monomial qvar() { return Monomial::var("q"); }
Monomial Qvar() { return Monomial::var("Q"); }

// (1 - q Q/Q_x)
Factored one_minus_qQ_over(const Monomial &qa) {
  return Factored::one_minus(qvar() * Qvar() * qa.inverse());
}
// (1 - Q/Q_x)
Factored one_minus_Q_over(const Monomial &qa) {
  return Factored::one_minus(Qvar() * qa.inverse());
}
// (1 - q Q_x)
Factored one_minus_q_times(const Monomial &qa) {
  return Factored::one_minus(qvar() * qa);
}

} // namespace

RatioOperator Annihilator::ratio_E() const {
  Factored f = Factored::one();
  for (int ci = 0; ci < d_->crossing_count(); ++ci) {
    long eps = d_->crossing(ci).sign;
    Monomial mono = (q_a(ci) * q_b(ci)).pow_doubled(eps) *
                    Monomial::var(var_Qc(ci), -1);
    f *= Factored::from_monomial(mono) * one_minus_qQ_over(q_a(ci)) *
         one_minus_qQ_over(q_ap(ci)).inverse();
  }
  return {RatioKind::E, 0, f, 0};
}

RatioOperator Annihilator::ratio_E0() const {
  Factored f = Factored::one();
  for (int ci = 0; ci < d_->crossing_count(); ++ci) {
    long eps = d_->crossing(ci).sign;
    Monomial mono =
        (Qvar() * (q_a(ci) * q_b(ci)).inverse()).pow_doubled(2 * eps);
    f *= Factored::from_monomial(mono) * one_minus_Q_over(q_ap(ci)) *
         one_minus_q_times(q_b(ci)) * one_minus_Q_over(q_a(ci)).inverse() *
         one_minus_q_times(q_bp(ci)).inverse();
  }
  return {RatioKind::E0, 0, f, 0};
}

RatioOperator Annihilator::ratio_Ec(int crossing_id) const {
  int cid = crossing_id - 1;
  const Crossing &c = d_->crossing(cid);
  int j = c.label_j(), jp = c.label_jp();
  bool j_over = c.j_is_overpass();
  long eps = c.sign;

  Factored qk1 = Factored::one_minus(qvar() * Monomial::var(var_Qc(cid)));
  Factored Fc;
  if (j_over && eps > 0) {
    Fc = Factored::from_monomial((q_a(cid) * q_bp(cid)).pow_doubled(-1)) *
         one_minus_q_times(q_b(cid)) * one_minus_Q_over(q_ap(cid)) *
         qk1.inverse();
  } else if (j_over && eps < 0) {
    Monomial m = (q_ap(cid) * q_b(cid)).pow_doubled(1) * Qvar().inverse();
    m.c = -m.c;
    Fc = Factored::from_monomial(m) * one_minus_q_times(q_b(cid)) *
         one_minus_Q_over(q_ap(cid)) * qk1.inverse();
  } else if (!j_over && eps > 0) {
    Monomial m = (q_ap(cid) * q_b(cid)).pow_doubled(1) * Qvar().inverse();
    Fc = Factored::from_monomial(m) * Factored::one_minus(q_bp(cid)) *
         one_minus_qQ_over(q_a(cid)) * qk1.inverse();
  } else {
    Monomial m = (q_a(cid) * q_bp(cid)).pow_doubled(-1);
    m.c = -m.c;
    Fc = Factored::from_monomial(m) * Factored::one_minus(q_bp(cid)) *
         one_minus_qQ_over(q_a(cid)) * qk1.inverse();
  }

  Factored f = Fc;
  for (int k = j + 1; k < jp; ++k) {
    int xi = d_->crossing_of_pass(k);
    long e = d_->crossing(xi).sign;
    long flip = j_over ? 1 : -1;
    if (d_->pass_is_over(k)) {
      Factored mono = Factored::from_monomial(
          (Qvar() * (q_b(xi) * q_bp(xi)).inverse()).pow_doubled(flip * e));
      Factored quo = j_over ? one_minus_Q_over(q_ap(xi)) *
                                  one_minus_Q_over(q_a(xi)).inverse()
                            : one_minus_qQ_over(q_a(xi)) *
                                  one_minus_qQ_over(q_ap(xi)).inverse();
      f *= mono * quo;
    } else {
      Factored mono = Factored::from_monomial(
          (Qvar() * (q_a(xi) * q_ap(xi)).inverse()).pow_doubled(flip * e));
      Factored quo = j_over ? one_minus_q_times(q_b(xi)) *
                                  one_minus_q_times(q_bp(xi)).inverse()
                            : Factored::one_minus(q_bp(xi)) *
                                  Factored::one_minus(q_b(xi)).inverse();
      f *= mono * quo;
    }
  }
  return {RatioKind::Ec, crossing_id, f, 0};
}

std::pair<Laurent, Laurent>
Annihilator::eval_qlattice(const Factored &x, long n, long k0,
                           const std::vector<long> &kc) const {
  if (x.is_zero())
    return {Laurent::zero(), Laurent::one()};
  auto v_exp_of = [&](const Monomial &m) {
    // q^(e/2) -> v^e with q = v^2; variable value exponents in v:
    // q: 2, Q: 2n, Q0: 2 k0, Qc<i>: 2 kc[i]
    // doubled exponent e2 contributes e2/2 * (value exponent)
    long acc = 0;
    for (const auto &[var, e2] : m.e2) {
      long val;
      if (var == "q")
        val = 2;
      else if (var == "Q")
        val = 2 * n;
      else if (var == "Q0")
        val = 2 * k0;
      else if (var.rfind("Qc", 0) == 0)
        val = 2 * kc.at(static_cast<size_t>(std::stoi(var.substr(2))));
      else
        throw std::invalid_argument("eval_qlattice: unexpected variable " +
                                    var);
      long num = e2 * val;
      if (num % 2 != 0)
        throw BranchAmbiguity("half-integer v-power at lattice point");
      acc += num / 2;
    }
    return acc;
  };
  Laurent num = Laurent::monomial(v_exp_of(x.lead()), x.lead().c);
  Laurent den = Laurent::one();
  for (const auto &[m, e] : x.factors()) {
    Laurent base = Laurent::one() - Laurent::monomial(v_exp_of(m), m.c);
    for (long i = 0; i < std::llabs(e); ++i) {
      if (e > 0)
        num *= base;
      else
        den *= base;
    }
  }
  return {num, den};
}

bool Annihilator::ratio_holds_at(const RatioOperator &op, long n,
                                 const Coloring &col) const {
  long ns = n, k0s = col.k0;
  std::vector<long> kcs = col.kc;
  if (op.kind == RatioKind::E)
    ns = n + 1;
  else if (op.kind == RatioKind::E0)
    k0s = col.k0 + 1;
  else
    kcs.at(static_cast<size_t>(op.crossing - 1)) += 1;

  Laurent w = summand(*d_, n, col);
  Coloring shifted = coloring_from_shifts(*d_, k0s, kcs);
  Laurent ws = summand(*d_, ns, shifted);
  auto [num, den] = eval_qlattice(op.formula, n, col.k0, col.kc);
  // E_x w * den = q^* num * w, with q^* = v^{qstar_v}
  Laurent lhs = ws * den;
  Laurent rhs = (num * w).mul_monomial(op.qstar_v, 1);
  return lhs == rhs;
}

void Annihilator::calibrate_qstar(RatioOperator &op,
                                  const std::vector<Coloring> &samples,
                                  long n) const {
  std::optional<long> qstar;
  int used = 0;
  for (const Coloring &col : samples) {
    long ns = n, k0s = col.k0;
    std::vector<long> kcs = col.kc;
    if (op.kind == RatioKind::E)
      ns = n + 1;
    else if (op.kind == RatioKind::E0)
      k0s = col.k0 + 1;
    else
      kcs.at(static_cast<size_t>(op.crossing - 1)) += 1;
    Laurent w = summand(*d_, n, col);
    if (w.is_zero())
      continue;
    Laurent ws = summand(*d_, ns, coloring_from_shifts(*d_, k0s, kcs));
    auto [num, den] = eval_qlattice(op.formula, n, col.k0, col.kc);
    Laurent lhs = ws * den;
    Laurent rhs = num * w;
    if (rhs.is_zero()) {
      if (!lhs.is_zero())
        throw InconsistentQStar("one side vanished in calibration");
      continue;
    }
    if (lhs.is_zero())
      throw InconsistentQStar("summand quotient vanished unexpectedly");
    long m = lhs.lo_exp() - rhs.lo_exp();
    if (lhs != rhs.mul_monomial(m, 1))
      throw InconsistentQStar("ratio is not a pure power of q at a sample");
    if (qstar && *qstar != m)
      throw InconsistentQStar("q^* differs between samples: v^" +
                              std::to_string(*qstar) + " vs v^" +
                              std::to_string(m));
    qstar = m;
    ++used;
  }
  if (used < 2)
    throw InconsistentQStar("need at least 2 samples with nonzero summand");
  op.qstar_v = *qstar;
}

std::vector<RatioOperator>
Annihilator::calibrated_operators(long n, int min_samples) const {
  std::vector<Coloring> interior;
  enumerate_colorings(*d_, n, [&](const Coloring &col) {
    interior.push_back(col);
  });
  if (static_cast<int>(interior.size()) > 4 * min_samples) {
    // spread out deterministically
    std::vector<Coloring> picked;
    size_t step = interior.size() / static_cast<size_t>(4 * min_samples);
    for (size_t i = 0; i < interior.size(); i += step + 1)
      picked.push_back(interior[i]);
    interior.swap(picked);
  }
  std::vector<RatioOperator> ops;
  ops.push_back(ratio_E());
  ops.push_back(ratio_E0());
  for (int c = 1; c <= d_->crossing_count(); ++c)
    ops.push_back(ratio_Ec(c));
  for (auto &op : ops)
    calibrate_qstar(op, interior, n);
  return ops;
}

Factored ev_q1(const Factored &x) {
  try {
    std::map<std::string, Monomial> binding;
    binding["q"] = Monomial::constant(1);
    return x.substitute(binding);
  } catch (const ZeroInverse &) {
    throw PoleAtOne("pole at q = 1");
  }
}

Factored psi(const Factored &x, const Diagram &d) {
  if (x.depends_on("q"))
    throw ResidualQ("psi applied to an expression still containing q");
  std::map<std::string, std::string> names;
  names["Q"] = "wm";
  names["Q0"] = "w0";
  for (int ci = 0; ci < d.crossing_count(); ++ci) {
    char from[16], to[16];
    std::snprintf(from, sizeof from, "Qc%02d", ci);
    std::snprintf(to, sizeof to, "wc%02d", ci);
    names[from] = to;
  }
  return x.rename(names);
}

std::string MatchReport::to_json() const {
  std::ostringstream os;
  os << "{\"ok\":" << (ok ? "true" : "false") << ",\"symbolic_ok\":"
     << (symbolic_ok ? "true" : "false") << ",\"max_residual\":" << max_residual
     << ",\"generators\":[";
  for (size_t i = 0; i < entries.size(); ++i) {
    const MatchEntry &e = entries[i];
    if (i)
      os << ",";
    os << "{\"generator\":\"" << e.generator << "\",\"symbolic_ok\":"
       << (e.symbolic_ok ? "true" : "false")
       << ",\"max_residual\":" << e.max_residual << "}";
  }
  os << "]}";
  return os.str();
}

MatchReport verify_match(const Diagram &d, const GluingSystem &g,
                         int numeric_points, unsigned seed, bool symbolic,
                         double tol) {
  Annihilator ann(d);
  MatchReport rep;
  rep.symbolic_ok = true;
  rep.ok = true;

  struct Pair {
    std::string name;
    Factored lhs, rhs;
  };
  std::vector<Pair> pairs;
  pairs.push_back({"E", psi(ev_q1(ann.ratio_E().formula), d), g.sqrt_s()});
  pairs.push_back(
      {"E0", psi(ev_q1(ann.ratio_E0().formula), d), g.loop_by_winding(0)});
  for (int c = 1; c <= d.crossing_count(); ++c) {
    const Crossing &cr = d.crossing(c - 1);
    Factored L = g.loop_by_winding(c);
    if (!cr.j_is_overpass())
      L = L.inverse();
    pairs.push_back({"E" + std::to_string(c),
                     psi(ev_q1(ann.ratio_Ec(c).formula), d), L});
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> radius(0.6, 1.7);
  auto random_point = [&](const std::vector<std::string> &vars) {
    ComplexPoint pt;
    for (const auto &v : vars)
      pt[v] = std::polar(radius(rng), angle(rng));
    return pt;
  };

  for (auto &p : pairs) {
    MatchEntry entry;
    entry.generator = p.name;
    entry.symbolic_ok = !symbolic || p.lhs == p.rhs;
    entry.lhs = p.lhs.to_string();
    entry.rhs = p.rhs.to_string();
    std::vector<std::string> vars = p.rhs.variables();
    for (const auto &v : p.lhs.variables())
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    double worst = 0.0;
    for (int t = 0; t < numeric_points; ++t) {
      ComplexPoint pt = random_point(vars);
      try {
        std::complex<double> a = p.lhs.eval_complex(pt);
        std::complex<double> b = p.rhs.eval_complex(pt);
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        worst = std::max(worst, std::abs(a - b) / scale);
      } catch (const PoleHit &) {
        --t; // resample away from poles
      }
    }
    entry.max_residual = worst;
    if (!entry.symbolic_ok || worst > tol)
      rep.ok = false;
    rep.symbolic_ok = rep.symbolic_ok && entry.symbolic_ok;
    rep.max_residual = std::max(rep.max_residual, worst);
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

} // namespace octasum
