#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octasum/diagram.hpp"
#include "octasum/factored.hpp"
#include "octasum/gluing.hpp"
#include "octasum/laurent.hpp"
#include "octasum/statesum.hpp"

namespace octasum {

struct InconsistentQStar : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleAtOne : std::domain_error {
  using std::domain_error::domain_error;
};
struct ResidualQ : std::domain_error {
  using std::domain_error::domain_error;
};
struct MatchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shift-quotient operators of the state summand over the q-lattice
// variables {q, Q = q^n, Q0 = q^{k_0}, Qc<i> = q^{k_i}}. Arc variables
// Q_a are monomials in (Q0, Qc).
enum class RatioKind { E, E0, Ec };

struct RatioOperator {
  RatioKind kind;
  int crossing = 0; // 1-based, Ec only
  Factored formula; // right-hand side, exact up to q^*
  long qstar_v = 0; // calibrated q^* = v^{qstar_v}
};

class Annihilator {
public:
  explicit Annihilator(const Diagram &d);

  static std::string var_q() { return "q"; }
  static std::string var_Q() { return "Q"; }
  static std::string var_Q0() { return "Q0"; }
  std::string var_Qc(int crossing_id) const;

  Monomial q_arc(int l) const; // Q_{[l,l+1]} as a monomial in (Q0, Qc)
  Monomial q_a(int ci) const;
  Monomial q_ap(int ci) const;
  Monomial q_b(int ci) const;
  Monomial q_bp(int ci) const;

  RatioOperator ratio_E() const;
  RatioOperator ratio_E0() const;
  RatioOperator ratio_Ec(int crossing_id) const;

  // Exact evaluation of a q-lattice expression at an integer point:
  // returns (numerator, denominator) Laurent pair.
  std::pair<Laurent, Laurent> eval_qlattice(const Factored &x, long n,
                                            long k0,
                                            const std::vector<long> &kc) const;

  // Calibrates q^* on >= 2 samples with nonzero summand; throws
  // InconsistentQStar when no single monomial works on all samples.
  void calibrate_qstar(RatioOperator &op,
                       const std::vector<Coloring> &samples, long n) const;

  // All-in-one: build + calibrate on interior samples of color n.
  std::vector<RatioOperator> calibrated_operators(long n = 3,
                                                  int min_samples = 10) const;

  // Cross-multiplied exact identity check at one sample.
  bool ratio_holds_at(const RatioOperator &op, long n, const Coloring &col) const;

  const Diagram &diagram() const { return *d_; }

private:
  const Diagram *d_;
};

// ev_q: set q -> 1, keeping Q, Q0, Qc free.
Factored ev_q1(const Factored &x);

// psi: Q -> wm, Q0 -> w0, Qc<i> -> wc<i>; rejects residual q.
Factored psi(const Factored &x, const Diagram &d);

struct MatchEntry {
  std::string generator;
  bool symbolic_ok = false;
  double max_residual = 0.0;
  std::string lhs, rhs; // canonical forms
};

struct MatchReport {
  bool ok = false;
  bool symbolic_ok = false;
  double max_residual = 0.0;
  std::vector<MatchEntry> entries;
  std::string to_json() const;
};

// The q=1 matching: psi(ev_q1(R)) = s, psi(ev_q1(R0)) = L0, and for each
// crossing psi(ev_q1(Rc)) = L_c (j overpass) or L_c^{-1} (j underpass),
// checked symbolically and at `numeric_points` random complex points.
MatchReport verify_match(const Diagram &d, const GluingSystem &g,
                         int numeric_points = 25, unsigned seed = 7,
                         bool symbolic = true, double tol = 1e-9);

} // namespace octasum
