#include "octasum/statesum.hpp"

#include <algorithm>
#include <thread>

namespace octasum {

Coloring coloring_from_shifts(const Diagram &d, long k0,
                              const std::vector<long> &kc) {
  Coloring col;
  col.k0 = k0;
  col.kc = kc;
  int arcs = d.arc_count();
  col.arc_color.assign(static_cast<size_t>(arcs), 0);
  col.arc_color[0] = k0;
  for (int l = 2; l <= arcs; ++l) {
    long k = kc.at(static_cast<size_t>(d.crossing_of_pass(l)));
    long prev = col.arc_color[static_cast<size_t>(l - 2)];
    col.arc_color[static_cast<size_t>(l - 1)] =
        d.pass_is_over(l) ? prev + k : prev - k;
  }
  return col;
}

void enumerate_colorings(const Diagram &d, long n,
                         const std::function<void(const Coloring &)> &emit) {
  if (n < 0)
    throw std::invalid_argument("color n must be nonnegative");
  int arcs = d.arc_count();
  int nc = d.crossing_count();
  Coloring col;
  col.kc.assign(static_cast<size_t>(nc), -1);
  col.arc_color.assign(static_cast<size_t>(arcs), 0);

  // first visit of crossing ci along passes 2..2c is the pass whose partner
  // label is larger or equal to it... the partner may also be pass 1, which
  // is walked last.
  auto other_label = [&](int l) {
    const Crossing &c = d.crossing(d.crossing_of_pass(l));
    return c.over_label == l ? c.under_label : c.over_label;
  };

  std::function<void(int)> walk = [&](int l) {
    if (l > arcs) {
      // close up through pass 1 (always an underpass)
      long k = col.kc[static_cast<size_t>(d.crossing_of_pass(1))];
      long prev = col.arc_color[static_cast<size_t>(arcs - 1)];
      if (prev - k == col.k0)
        emit(col);
      return;
    }
    long prev = col.arc_color[static_cast<size_t>(l - 2)];
    int ci = d.crossing_of_pass(l);
    bool over = d.pass_is_over(l);
    int partner = other_label(l);
    bool first_visit = partner == 1 || partner > l;
    if (!first_visit) {
      long k = col.kc[static_cast<size_t>(ci)];
      long r = over ? prev + k : prev - k;
      if (r < 0 || r > n)
        return;
      col.arc_color[static_cast<size_t>(l - 1)] = r;
      walk(l + 1);
      return;
    }
    long kmax = over ? n - prev : prev;
    for (long k = 0; k <= kmax; ++k) {
      col.kc[static_cast<size_t>(ci)] = k;
      col.arc_color[static_cast<size_t>(l - 1)] = over ? prev + k : prev - k;
      walk(l + 1);
    }
    col.kc[static_cast<size_t>(ci)] = -1;
  };

  for (long k0 = 0; k0 <= n; ++k0) {
    col.k0 = k0;
    col.arc_color[0] = k0;
    walk(2);
  }
}

long count_colorings(const Diagram &d, long n) {
  long count = 0;
  enumerate_colorings(d, n, [&](const Coloring &) { ++count; });
  return count;
}

Laurent crossing_weight(int sign, long n, long a, long b, long k) {
  if (k < 0)
    return Laurent::zero();
  long ap = a + k, bp = b - k;
  Laurent poly = qfact_ratio(n - a, n - ap); // 0 when a' > n
  if (poly.is_zero())
    return poly;
  poly *= qbinomial(b, k); // 0 when k > b i.e. b' < 0
  if (poly.is_zero())
    return poly;
  long v_exp;
  mpq_class coeff = 1;
  if (sign > 0) {
    v_exp = n + n * a + n * bp - ap * bp - a * b;
  } else {
    v_exp = -n - n * ap - n * b + ap * b + a * bp - k;
    if (k % 2 != 0)
      coeff = -1;
  }
  return poly.mul_monomial(v_exp, coeff);
}

Laurent summand(const Diagram &d, long n, const Coloring &col) {
  Laurent w = Laurent::one();
  long rot_exp = 0;
  for (int l = 1; l <= d.arc_count(); ++l)
    rot_exp += (2 * col.arc_color[static_cast<size_t>(l - 1)] - n) *
               d.arc_rotation(l);
  w = w.mul_monomial(rot_exp, 1);
  for (int ci = 0; ci < d.crossing_count(); ++ci) {
    const Crossing &c = d.crossing(ci);
    long a = col.arc_color[static_cast<size_t>(
        (c.over_label + d.arc_count() - 2) % d.arc_count())];
    long b = col.arc_color[static_cast<size_t>(
        (c.under_label + d.arc_count() - 2) % d.arc_count())];
    w *= crossing_weight(c.sign, n, a, b, col.kc[static_cast<size_t>(ci)]);
    if (w.is_zero())
      return w;
  }
  return w;
}

namespace {

// One worker's share: colorings with k0 in [k0_lo, k0_hi].
Laurent jones_partial(const Diagram &d, long n, long k0_lo, long k0_hi) {
  Laurent acc = Laurent::zero();
  enumerate_colorings(d, n, [&](const Coloring &col) {
    if (col.k0 < k0_lo || col.k0 > k0_hi)
      return;
    acc += summand(d, n, col);
  });
  return acc;
}

} // namespace

Laurent colored_jones(const Diagram &d, long n, int jobs) {
  if (n < 0)
    throw std::invalid_argument("color n must be nonnegative");
  Laurent sum = Laurent::zero();
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n) + 1));
  if (jobs == 1) {
    sum = jones_partial(d, n, 0, n);
  } else {
    std::vector<Laurent> parts(static_cast<size_t>(jobs));
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      long lo = (n + 1) * t / jobs;
      long hi = (n + 1) * (t + 1) / jobs - 1;
      pool.emplace_back([&, t, lo, hi] {
        parts[static_cast<size_t>(t)] = jones_partial(d, n, lo, hi);
      });
    }
    for (auto &th : pool)
      th.join();
    for (const auto &p : parts)
      sum += p;
  }
  Laurent j = sum.mul_monomial(n, 1); // q^(n/2) prefactor
  if (!j.is_integral_q_polynomial())
    throw IntegralityViolation("colored Jones value left Z[q^(+-1)]: " +
                               j.to_string());
  return j;
}

Laurent unknot_jones(long n) {
  Laurent j = Laurent::zero();
  for (long i = 0; i <= n; ++i)
    j += Laurent::q_half_power(2 * i);
  return j;
}

// ---------------------------------------------------------------------------
// Kauffman bracket oracle
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i)
      parent[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

Laurent kauffman_jones(const Diagram &d) {
  int n = d.crossing_count();
  if (n == 0)
    return Laurent::one();
  if (n > 20)
    throw std::invalid_argument("Kauffman expansion limited to 20 crossings");

  // endpoints: 4 per crossing, id 4*ci + slot (slots in PD rotation order);
  // arcs join their two endpoint incidences.
  std::vector<std::pair<int, int>> arc_ends(static_cast<size_t>(d.arc_count()),
                                            {-1, -1});
  auto note_end = [&](int arc, int endpoint) {
    auto &e = arc_ends[static_cast<size_t>(arc - 1)];
    (e.first < 0 ? e.first : e.second) = endpoint;
  };
  for (int ci = 0; ci < n; ++ci) {
    const Crossing &c = d.crossing(ci);
    if (c.sign > 0) {
      note_end(c.under_in, 4 * ci + 0);
      note_end(c.over_out, 4 * ci + 1);
      note_end(c.under_out, 4 * ci + 2);
      note_end(c.over_in, 4 * ci + 3);
    } else {
      note_end(c.under_in, 4 * ci + 0);
      note_end(c.over_in, 4 * ci + 1);
      note_end(c.under_out, 4 * ci + 2);
      note_end(c.over_out, 4 * ci + 3);
    }
  }

  // bracket in the Kauffman variable A; reuse Laurent with v := A
  Laurent bracket = Laurent::zero();
  Laurent delta = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
  for (unsigned state = 0; state < (1u << n); ++state) {
    UnionFind uf(4 * n);
    for (const auto &[p, q] : arc_ends)
      uf.unite(p, q);
    int a_count = 0;
    for (int ci = 0; ci < n; ++ci) {
      bool a_smoothing = (state >> ci) & 1u;
      if (a_smoothing) {
        ++a_count; // joins slots (0,1) and (2,3)
        uf.unite(4 * ci + 0, 4 * ci + 1);
        uf.unite(4 * ci + 2, 4 * ci + 3);
      } else {
        uf.unite(4 * ci + 1, 4 * ci + 2);
        uf.unite(4 * ci + 3, 4 * ci + 0);
      }
    }
    std::vector<bool> seen(static_cast<size_t>(4 * n), false);
    int loops = 0;
    for (int x = 0; x < 4 * n; ++x) {
      int r = uf.find(x);
      if (!seen[static_cast<size_t>(r)]) {
        seen[static_cast<size_t>(r)] = true;
        ++loops;
      }
    }
    Laurent term = Laurent::monomial(a_count - (n - a_count), 1);
    for (int i = 1; i < loops; ++i)
      term *= delta;
    bracket += term;
  }

  // f = (-A)^(-3 wr) <D>; V(q) by A = q^(-1/4)
  int wr = d.writhe();
  Laurent f = bracket.mul_monomial(-3 * wr, (wr % 2 == 0) ? 1 : -1);
  if (f.is_zero())
    return f;
  Laurent v_poly = Laurent::zero();
  for (long e = f.lo_exp(); e <= f.hi_exp(); ++e) {
    mpq_class coeff = f.coeff(e);
    if (coeff == 0)
      continue;
    if (e % 2 != 0)
      throw std::logic_error("Kauffman bracket of a knot has odd A-exponent");
    // A-exponent e -> q-exponent -e/4 -> v-exponent -e/2
    v_poly += Laurent::monomial(-e / 2, coeff);
  }
  return v_poly;
}

bool jones_n1_matches_kauffman(const Diagram &d) {
  Laurent lhs = colored_jones(d, 1).invert_variable();
  Laurent rhs =
      (Laurent::one() + Laurent::q_half_power(-2)) * kauffman_jones(d);
  return lhs == rhs;
}

} // namespace octasum
