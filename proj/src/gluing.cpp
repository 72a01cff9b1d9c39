#include "octasum/gluing.hpp"

#include <sstream>

namespace octasum {

GluingSystem::GluingSystem(const Diagram &d) : d_(&d) {
  if (d.crossing_count() == 0)
    throw std::invalid_argument("gluing system needs a crossing");
}

std::string GluingSystem::var_wc(int crossing_id) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "wc%02d", crossing_id);
  return buf;
}

Monomial GluingSystem::arc_param(int l) const {
  // z_{1,2} = w0; passing overpass j multiplies by w_j, underpass by 1/w_j
  Monomial z = Monomial::var(var_w0());
  for (int j = 2; j <= l; ++j) {
    int ci = d_->crossing_of_pass(j);
    z = z * Monomial::var(var_wc(ci), d_->pass_is_over(j) ? 2 : -2);
  }
  return z;
}

Monomial GluingSystem::z_a(int ci) const {
  int o = d_->crossing(ci).over_label;
  return arc_param(o == 1 ? d_->arc_count() : o - 1);
}
Monomial GluingSystem::z_ap(int ci) const {
  return arc_param(d_->crossing(ci).over_label);
}
Monomial GluingSystem::z_b(int ci) const {
  int u = d_->crossing(ci).under_label;
  return arc_param(u == 1 ? d_->arc_count() : u - 1);
}
Monomial GluingSystem::z_bp(int ci) const {
  return arc_param(d_->crossing(ci).under_label);
}

CrossingShapes GluingSystem::shapes(int ci) const {
  CrossingShapes s;
  Monomial wm = Monomial::var(var_wm());
  s.w = Factored::variable(var_wc(ci));
  s.z_ui = Factored::from_monomial(z_a(ci) * wm.inverse());
  s.z_uo = Factored::from_monomial(wm * z_ap(ci).inverse());
  s.z_li = Factored::from_monomial(z_b(ci).inverse());
  s.z_lo = Factored::from_monomial(z_bp(ci));
  return s;
}

Factored GluingSystem::corner_factor(int ci, int slot) const {
  const Crossing &c = d_->crossing(ci);
  Monomial wm = Monomial::var(var_wm());
  ShapeTriple w = shape_triple(Monomial::var(var_wc(ci)));
  ShapeTriple ui = shape_triple(z_a(ci) * wm.inverse());
  ShapeTriple uo = shape_triple(wm * z_ap(ci).inverse());
  ShapeTriple li = shape_triple(z_b(ci).inverse());
  ShapeTriple lo = shape_triple(z_bp(ci));
  // Three spine corners per diagram corner; the table matches the products
  // appearing in the loop-equation analysis of the 5T-spine.
  Factored f;
  if (c.sign > 0) {
    switch (slot) {
    case 0: f = w.zp * ui.zpp * li.zpp; break;  // E
    case 1: f = w.zpp * ui.zp * lo.zp; break;   // N
    case 2: f = w.zp * uo.zpp * lo.zpp; break;  // W
    case 3: f = w.zpp * uo.zp * li.zp; break;   // S
    default: throw std::out_of_range("corner slot");
    }
  } else {
    switch (slot) {
    case 0: f = w.zpp * ui.zp * li.zp; break;   // S
    case 1: f = w.zp * ui.zpp * lo.zpp; break;  // E
    case 2: f = w.zpp * uo.zp * lo.zp; break;   // N
    case 3: f = w.zp * uo.zpp * li.zpp; break;  // W
    default: throw std::out_of_range("corner slot");
    }
  }
  if (corrupted_ && ci == 0 && slot == 0)
    f = f * Factored::variable(var_wm());
  return f;
}

Factored GluingSystem::big_region_equation(int face) const {
  const Face &fc = d_->faces().at(static_cast<size_t>(face));
  Factored r = Factored::one();
  for (const FaceCorner &corner : fc.corners)
    r *= corner_factor(corner.crossing, corner.slot);
  return r;
}

Factored GluingSystem::loop_by_winding(int c_or_zero) const {
  LoopClass loop = d_->loop_of_crossing(c_or_zero);
  Factored L = Factored::one();
  for (size_t f = 0; f < d_->faces().size(); ++f) {
    int w = loop.winding[f];
    if (w != 0)
      L *= big_region_equation(static_cast<int>(f)).pow(w);
  }
  return L;
}

namespace {

Factored one_minus_wm_over(const Monomial &z) {
  return Factored::one_minus(Monomial::var("wm") * z.inverse());
}

} // namespace

Factored GluingSystem::loop_closed_form(int c_or_zero) const {
  Monomial wm = Monomial::var(var_wm());
  if (c_or_zero == 0) {
    // L_0 = prod_c (wm/(z_a z_b))^eps (1-wm/z_a')(1-z_b) /
    //              ((1-wm/z_a)(1-z_b'))
    Factored L = Factored::one();
    for (int ci = 0; ci < d_->crossing_count(); ++ci) {
      int eps = d_->crossing(ci).sign;
      Factored mono = Factored::from_monomial(
          (wm * (z_a(ci) * z_b(ci)).inverse()).pow_doubled(2 * eps));
      L *= mono * one_minus_wm_over(z_ap(ci)) *
           Factored::one_minus(z_b(ci)) *
           one_minus_wm_over(z_a(ci)).inverse() *
           Factored::one_minus(z_bp(ci)).inverse();
    }
    return L;
  }

  int cid = c_or_zero - 1;
  const Crossing &c = d_->crossing(cid);
  int j = c.label_j(), jp = c.label_jp();
  bool j_over = c.j_is_overpass();
  int eps = c.sign;

  // K_c, the contribution of the crossing c itself
  Factored Kc;
  Factored w_factor = Factored::one_minus(Monomial::var(var_wc(cid)));
  if (j_over && eps > 0) {
    Kc = Factored::from_monomial(z_bp(cid).inverse()) *
         one_minus_wm_over(z_ap(cid)) * Factored::one_minus(z_b(cid)) *
         w_factor.inverse();
  } else if (j_over && eps < 0) {
    Monomial m = z_ap(cid) * wm.inverse();
    m.c = -1;
    Kc = Factored::from_monomial(m) * one_minus_wm_over(z_ap(cid)) *
         Factored::one_minus(z_b(cid)) * w_factor.inverse();
  } else if (!j_over && eps > 0) {
    Kc = Factored::from_monomial(wm * z_ap(cid).inverse()) * w_factor *
         one_minus_wm_over(z_a(cid)).inverse() *
         Factored::one_minus(z_bp(cid)).inverse();
  } else {
    Monomial m = z_bp(cid);
    m.c = -1;
    Kc = Factored::from_monomial(m) * w_factor *
         one_minus_wm_over(z_a(cid)).inverse() *
         Factored::one_minus(z_bp(cid)).inverse();
  }

  Factored L = Kc;
  for (int k = j + 1; k < jp; ++k) {
    int xi = d_->crossing_of_pass(k);
    int e = d_->crossing(xi).sign;
    long u_plus = (1 + e) / 2, u_minus = (1 - e) / 2;
    if (d_->pass_is_over(k)) {
      Factored mono = Factored::from_monomial(
          z_b(xi).pow_doubled(2 * u_minus) *
          z_bp(xi).pow_doubled(-2 * u_plus));
      L *= mono * one_minus_wm_over(z_ap(xi)) *
           one_minus_wm_over(z_a(xi)).inverse();
    } else {
      Factored mono = Factored::from_monomial(
          wm.pow_doubled(2 * e) * z_a(xi).pow_doubled(2 * u_minus) *
          z_ap(xi).pow_doubled(-2 * u_plus));
      L *= mono * Factored::one_minus(z_b(xi)) *
           Factored::one_minus(z_bp(xi)).inverse();
    }
  }
  return L;
}

Factored GluingSystem::loop_closed_form2(int crossing_id) const {
  Monomial wm = Monomial::var(var_wm());
  int cid = crossing_id - 1;
  const Crossing &c = d_->crossing(cid);
  int j = c.label_j(), jp = c.label_jp();
  bool j_over = c.j_is_overpass();
  int eps = c.sign;

  Factored w_factor = Factored::one_minus(Monomial::var(var_wc(cid)));
  Factored Kc;
  if (j_over && eps > 0) {
    Kc = Factored::from_monomial((z_a(cid) * z_bp(cid)).pow_doubled(-1)) *
         one_minus_wm_over(z_ap(cid)) * Factored::one_minus(z_b(cid)) *
         w_factor.inverse();
  } else if (j_over && eps < 0) {
    Monomial m = (z_ap(cid) * z_b(cid)).pow_doubled(1) * wm.inverse();
    m.c = -m.c;
    Kc = Factored::from_monomial(m) * one_minus_wm_over(z_ap(cid)) *
         Factored::one_minus(z_b(cid)) * w_factor.inverse();
  } else if (!j_over && eps > 0) {
    Kc = Factored::from_monomial(wm * (z_ap(cid) * z_b(cid)).pow_doubled(-1)) *
         w_factor * one_minus_wm_over(z_a(cid)).inverse() *
         Factored::one_minus(z_bp(cid)).inverse();
  } else {
    Monomial m = (z_a(cid) * z_bp(cid)).pow_doubled(1);
    m.c = -m.c;
    Kc = Factored::from_monomial(m) * w_factor *
         one_minus_wm_over(z_a(cid)).inverse() *
         Factored::one_minus(z_bp(cid)).inverse();
  }

  Factored L = Kc;
  for (int k = j + 1; k < jp; ++k) {
    int xi = d_->crossing_of_pass(k);
    long e = d_->crossing(xi).sign;
    if (d_->pass_is_over(k)) {
      Factored mono = Factored::from_monomial(
          (wm * (z_b(xi) * z_bp(xi)).inverse()).pow_doubled(e));
      L *= mono * one_minus_wm_over(z_ap(xi)) *
           one_minus_wm_over(z_a(xi)).inverse();
    } else {
      Factored mono = Factored::from_monomial(
          (wm * (z_a(xi) * z_ap(xi)).inverse()).pow_doubled(e));
      L *= mono * Factored::one_minus(z_b(xi)) *
           Factored::one_minus(z_bp(xi)).inverse();
    }
  }
  return L;
}

Factored GluingSystem::longitude_blackboard() const {
  Factored L = Factored::from_monomial(
      Monomial::var(var_wm(), -2 * d_->writhe()));
  for (int ci = 0; ci < d_->crossing_count(); ++ci) {
    Monomial wm = Monomial::var(var_wm());
    ShapeTriple ui = shape_triple(z_a(ci) * wm.inverse());
    ShapeTriple uo = shape_triple(wm * z_ap(ci).inverse());
    ShapeTriple li = shape_triple(z_b(ci).inverse());
    ShapeTriple lo = shape_triple(z_bp(ci));
    L *= uo.zpp * ui.zp * lo.zp.inverse() * li.zpp.inverse();
  }
  return L;
}

Factored GluingSystem::longitude_arcform() const {
  Factored L = Factored::from_monomial(
      Monomial::var(var_wm(), -2 * d_->writhe()));
  for (int ci = 0; ci < d_->crossing_count(); ++ci) {
    L *= Factored::variable(var_wc(ci)) * one_minus_wm_over(z_ap(ci)) *
         one_minus_wm_over(z_a(ci)).inverse() *
         Factored::one_minus(z_bp(ci)) *
         Factored::one_minus(z_b(ci)).inverse();
  }
  return L;
}

Factored GluingSystem::sqrt_s() const {
  Factored s = Factored::one();
  for (int ci = 0; ci < d_->crossing_count(); ++ci) {
    long eps = d_->crossing(ci).sign;
    Monomial mono = Monomial::var(var_wc(ci), -1) *
                    (z_a(ci) * z_b(ci)).pow_doubled(eps);
    s *= Factored::from_monomial(mono) * one_minus_wm_over(z_a(ci)) *
         one_minus_wm_over(z_ap(ci)).inverse();
  }
  return s;
}

GluingSystem::ShingleReport GluingSystem::shingle_check() const {
  ShingleReport rep;
  int arcs = d_->arc_count();
  auto fail = [&](const std::string &what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  // Upper shingles: consecutive underpasses p < r (cyclically) with only
  // overpasses between; lower shingles: consecutive overpasses.
  for (int intent = 0; intent < 2; ++intent) {
    bool upper = intent == 0; // overarc, ends at underpasses
    for (int p = 1; p <= arcs; ++p) {
      if (d_->pass_is_over(p) == upper)
        continue;
      // find the next pass of the same kind
      int r = d_->next_pass(p);
      std::vector<int> through;
      while (d_->pass_is_over(r) == !upper) {
        through.push_back(d_->crossing_of_pass(r));
        r = d_->next_pass(r);
      }
      int c1 = d_->crossing_of_pass(p), cn = d_->crossing_of_pass(r);
      Factored prod = Factored::one();
      for (int x : through)
        prod *= Factored::variable(var_wc(x));
      CrossingShapes s1 = shapes(c1), sn = shapes(cn);
      Factored wn_inv = Factored::variable(var_wc(cn)).inverse();
      Factored w1 = Factored::variable(var_wc(c1));
      if (upper) {
        if (sn.z_lo != s1.z_lo * wn_inv * prod)
          fail("upper shingle (lo) at pass " + std::to_string(p));
        if (sn.z_li != s1.z_li * w1 * prod.inverse())
          fail("upper shingle (li) at pass " + std::to_string(p));
      } else {
        if (sn.z_ui != s1.z_ui * w1 * prod.inverse())
          fail("lower shingle (ui) at pass " + std::to_string(p));
        if (sn.z_uo != s1.z_uo * wn_inv * prod)
          fail("lower shingle (uo) at pass " + std::to_string(p));
      }
    }
  }
  return rep;
}

GluingSystem::UnimodularityReport GluingSystem::basis_unimodularity() const {
  UnimodularityReport rep;
  int n = d_->crossing_count();
  int outer = d_->outer_face();
  // rows: loop K then gamma_c; columns: all faces except the outer one
  std::vector<std::vector<long>> m;
  for (int c = 0; c <= n; ++c) {
    LoopClass loop = d_->loop_of_crossing(c);
    std::vector<long> row;
    for (size_t f = 0; f < d_->faces().size(); ++f)
      if (static_cast<int>(f) != outer)
        row.push_back(loop.winding[f]);
    m.push_back(std::move(row));
  }
  rep.matrix = m;
  // fraction-free determinant over Z
  size_t dim = m.size();
  std::vector<std::vector<mpz_class>> a(dim, std::vector<mpz_class>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j)
      a[i][j] = m[i][j];
  mpz_class det = 1;
  int sign = 1;
  size_t rank = 0;
  mpz_class prev = 1;
  for (size_t col = 0; col < dim; ++col) {
    size_t piv = rank;
    while (piv < dim && a[piv][col] == 0)
      ++piv;
    if (piv == dim)
      continue;
    if (piv != rank) {
      std::swap(a[piv], a[rank]);
      sign = -sign;
    }
    for (size_t i = rank + 1; i < dim; ++i) {
      for (size_t j = col + 1; j < dim; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  rep.rank = static_cast<int>(rank);
  det = rank == dim ? sign * a[dim - 1][dim - 1] : 0;
  rep.det = det;
  rep.unimodular = det == 1 || det == -1;
  return rep;
}

std::string GluingSystem::system_json() const {
  std::ostringstream os;
  os << "{\"variables\":[\"" << var_wm() << "\",\"" << var_w0() << "\"";
  for (int ci = 0; ci < d_->crossing_count(); ++ci)
    os << ",\"" << var_wc(ci) << "\"";
  os << "],\"L0\":" << loop_by_winding(0).to_json() << ",\"loops\":[";
  for (int c = 1; c <= d_->crossing_count(); ++c) {
    if (c > 1)
      os << ",";
    os << loop_by_winding(c).to_json();
  }
  os << "],\"w_lambda\":" << longitude_arcform().to_json()
     << ",\"s\":" << sqrt_s().to_json() << "}";
  return os.str();
}

} // namespace octasum
