#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "octasum/diagram.hpp"
#include "octasum/factored.hpp"

namespace octasum {

struct CrossingShapes {
  Factored w, z_ui, z_uo, z_li, z_lo;
};

// Everything the 5T-spine carries over the reduced variable set
// {wm, w0, wc<i>}: arc parameters, shapes, big-region and loop equations,
// peripheral holonomies and the square root s.
class GluingSystem {
public:
  explicit GluingSystem(const Diagram &d);

  const Diagram &diagram() const { return *d_; }
  static std::string var_wm() { return "wm"; }
  static std::string var_w0() { return "w0"; }
  std::string var_wc(int crossing_id) const;

  // arc parameter z_{l,l+1}, a monomial in (w0, wc)
  Monomial arc_param(int l) const;
  // per-crossing arc parameters
  Monomial z_a(int ci) const;  // over-in
  Monomial z_ap(int ci) const; // over-out
  Monomial z_b(int ci) const;  // under-in
  Monomial z_bp(int ci) const; // under-out

  CrossingShapes shapes(int ci) const;

  // Corner factor f(v) at the corner between PD rotation slots `slot` and
  // slot+1 of crossing ci (three spine corners per diagram corner).
  Factored corner_factor(int ci, int slot) const;

  Factored big_region_equation(int face) const;
  Factored loop_by_winding(int c_or_zero) const;
  // direct overpass/underpass product formulas, K_c four-case variant
  Factored loop_closed_form(int c_or_zero) const;
  // the rearranged variant with half-power groupings (K_c')
  Factored loop_closed_form2(int crossing_id) const;

  Factored longitude_blackboard() const; // includes the wm^{-wr} correction
  Factored longitude_arcform() const;
  Factored sqrt_s() const;

  struct ShingleReport {
    bool ok = true;
    std::vector<std::string> failures;
  };
  ShingleReport shingle_check() const;

  struct UnimodularityReport {
    std::vector<std::vector<long>> matrix; // rows: K, gamma_c; cols: faces
    mpz_class det;
    bool unimodular = false;
    int rank = 0;
  };
  UnimodularityReport basis_unimodularity() const;

  std::string system_json() const;

  // test hook: corrupts one corner factor so downstream identity checks fail
  void corrupt_corner_table_for_tests() { corrupted_ = true; }

private:
  const Diagram *d_;
  bool corrupted_ = false;
};

} // namespace octasum
