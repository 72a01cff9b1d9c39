#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "octasum/diagram.hpp"
#include "octasum/laurent.hpp"

namespace octasum {

struct IntegralityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An admissible coloring: the color k0 of arc [1,2] plus one shift k_c >= 0
// per crossing; arc colors are determined by walking the knot.
struct Coloring {
  long k0 = 0;
  std::vector<long> kc;        // per crossing id
  std::vector<long> arc_color; // arc_color[l-1] = color of arc [l,l+1]
};

// Arc colors from shifts, without admissibility checks (colors may leave
// [0,n]; the extended conventions make such summands vanish in total).
Coloring coloring_from_shifts(const Diagram &d, long k0,
                              const std::vector<long> &kc);

// Streams exactly the admissible colorings, pruning pass by pass.
void enumerate_colorings(const Diagram &d, long n,
                         const std::function<void(const Coloring &)> &emit);
long count_colorings(const Diagram &d, long n);

// Exact weight of one crossing given the neighbor colors a, a' = a+k (over
// strand in/out) and b, b' = b-k (under strand in/out).
Laurent crossing_weight(int sign, long n, long a, long b, long k);

// Product of crossing weights and extremum monomials for one coloring.
Laurent summand(const Diagram &d, long n, const Coloring &col);

// J_K(n), exact; throws IntegralityViolation if the result is not in Z[q^±1].
Laurent colored_jones(const Diagram &d, long n, int jobs = 1);

// (1-q^(n+1))/(1-q), the 0-crossing unknot value.
Laurent unknot_jones(long n);

// Jones polynomial V_K(q) via the Kauffman bracket state expansion,
// an implementation path fully independent of the R-matrix state sum.
Laurent kauffman_jones(const Diagram &d);

// The n=1 relation J_K(1, q^{-1}) = J_unknot(1, q^{-1}) * V_K(q), checked
// exactly.
bool jones_n1_matches_kauffman(const Diagram &d);

} // namespace octasum
