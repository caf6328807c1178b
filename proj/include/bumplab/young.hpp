#pragma once

#include <memory>
#include <span>
#include <string>

namespace bumplab {

// A Young function from a closed parametric universe:
//
//   power       c * t^p                     (p > 1, or p = 1 via scaled_power)
//   power_log   c * t^p * log(e+t)^beta     (p >= 1; beta < 0 admitted while increasing)
//   product     pointwise product of two members
//   conjugate   sup_{s>0} { s t - A(s) }    (numerical Legendre transform)
//
// log_bump(p, delta) is power_log(p, p-1+delta).  Every member knows its exact
// tail behaviour  A(t) ~ growth_coefficient * t^growth * log(e+t)^logexp,
// which seeds inversion brackets and decides B_p membership exactly.
//
// Instances are immutable values; all operations are safe to call concurrently.
class YoungFunction {
 public:
  enum class Family { Power, PowerLog, Product, Conjugate };

  static YoungFunction power(double p);                   // t^p, p > 1
  static YoungFunction scaled_power(double p, double c);  // c t^p, p >= 1
  static YoungFunction log_bump(double p, double delta);  // t^p log(e+t)^{p-1+delta}
  static YoungFunction power_log(double p, double beta, double c = 1.0);
  static YoungFunction product(const YoungFunction& a, const YoungFunction& b);
  static YoungFunction conjugate_of(const YoungFunction& a);

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }
  double derivative(double t) const;

  // Solves A(t) = y with |A(t) - y| <= 1e-12 * max(y, 1); inverse(0) = 0.
  double inverse(double y) const;

  double growth_exponent() const;     // exact power of the tail
  double log_exponent() const;        // exact log power of the tail
  double growth_coefficient() const;  // NaN for conjugates (constant not closed-form)

  // Strictly superlinear growth, i.e. A(t)/t -> infinity.  The linear limit
  // scaled_power(1, c) is admitted as a member but is not proper.
  bool is_proper_young() const;

  Family family() const;
  double param_p() const;     // Power / PowerLog
  double param_beta() const;  // PowerLog
  double param_c() const;
  YoungFunction factor_left() const;
  YoungFunction factor_right() const;
  YoungFunction conjugate_inner() const;

  std::string describe() const;

  struct Node;  // opaque implementation record

 private:
  explicit YoungFunction(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// B_p integral  [A]_{B_p} = integral_1^inf A(t) t^{-p} dt/t.
struct BpReport {
  double p = 0;
  double value = 0;  // +inf when divergent
  bool divergent = false;
  double truncation_point = 0;        // t-space quadrature cutoff (saturates at DBL_MAX)
  double quadrature_error_bound = 0;  // absolute bound on quadrature + tail error
};

// Quadrature after the substitution t = e^x, with a closed-form tail beyond the
// cutoff.  Membership (finite vs divergent) is decided exactly from the tail
// exponents.  For conjugate members the integral is taken over the conjugate's
// exact-exponent power-log model, calibrated at one far point; the reported
// value is for that model (the two are equivalent up to a bounded factor).
BpReport bp_constant(const YoungFunction& A, double p);

// sup_{s>0}(st - A(s)) by golden-section search on the concave objective,
// closed form for pure powers.  Requires superlinear A.
double conjugate(const YoungFunction& A, double t);

// max over the grid of  B^{-1}(t) C^{-1}(t) / A^{-1}(t):  the smallest c that
// makes the three-function Holder hypothesis hold on the grid.
double holder_compatibility(const YoungFunction& A, const YoungFunction& B,
                            const YoungFunction& C, std::span<const double> t_grid);

// Smallest c on the grid with A(t) <= B(c t): max of B^{-1}(A(t)) / t.
double comparison_constant(const YoungFunction& A, const YoungFunction& B,
                           std::span<const double> t_grid);

struct ConvexityWitness {
  bool ok = true;
  double s = 0, t = 0, midpoint_value = 0, chord_value = 0;
};

// Midpoint convexity test over pairs from a log-spaced grid.
ConvexityWitness check_midpoint_convexity(const YoungFunction& A, double t_lo, double t_hi,
                                          int n_points);

std::span<const double> default_holder_grid();

}  // namespace bumplab
