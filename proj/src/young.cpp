#include "bumplab/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bumplab/errors.hpp"

namespace bumplab {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

double log_ept(double t) { return std::log(kE + t); }

// log(e + e^x) without overflow.
double log_ept_of_exp(double x) {
  if (x > 1.0) return x + std::log1p(std::exp(1.0 - x));
  return std::log(kE + std::exp(x));
}

void require_finite_nonneg(double t, const char* who) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError(std::string(who) + ": argument must be finite and nonnegative");
}

}  // namespace

struct YoungFunction::Node {
  Family family = Family::Power;
  double c = 1.0;     // scale (Power / PowerLog)
  double p = 2.0;     // power (Power / PowerLog)
  double beta = 0.0;  // log power (PowerLog)
  std::shared_ptr<const Node> left, right;  // Product factors; left = conjugate inner
  // exact tail: A(t) ~ asym_c * t^asym_p * log(e+t)^asym_beta
  double asym_p = 2.0, asym_beta = 0.0, asym_c = 1.0;
};

YoungFunction::YoungFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

YoungFunction YoungFunction::power(double p) {
  if (!(p > 1.0)) throw ParameterError("power: requires p > 1 (use scaled_power for p = 1)");
  return scaled_power(p, 1.0);
}

YoungFunction YoungFunction::scaled_power(double p, double c) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("scaled_power: requires p >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("scaled_power: requires c > 0");
  auto n = std::make_shared<Node>();
  n->family = Family::Power;
  n->c = c;
  n->p = p;
  n->asym_p = p;
  n->asym_beta = 0.0;
  n->asym_c = c;
  return YoungFunction(std::move(n));
}

YoungFunction YoungFunction::log_bump(double p, double delta) {
  if (!(p > 1.0)) throw ParameterError("log_bump: requires p > 1");
  if (!(delta > 0.0)) throw ParameterError("log_bump: requires delta > 0");
  return power_log(p, p - 1.0 + delta, 1.0);
}

YoungFunction YoungFunction::power_log(double p, double beta, double c) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("power_log: requires p >= 1");
  if (!std::isfinite(beta)) throw ParameterError("power_log: beta must be finite");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("power_log: requires c > 0");
  if (beta < 0.0) {
    // derivative sign: p + beta * t / ((e+t) log(e+t)) must stay positive;
    // the bracket factor peaks at ~0.3184, so p > 0.3184*|beta| suffices.
    for (double x = -9.0; x <= 12.0; x += 0.125) {
      double t = std::pow(10.0, x);
      double h = t / ((kE + t) * log_ept(t));
      if (p + beta * h <= 0.0)
        throw ParameterError("power_log: not increasing for these (p, beta)");
    }
  }
  auto n = std::make_shared<Node>();
  n->family = Family::PowerLog;
  n->c = c;
  n->p = p;
  n->beta = beta;
  n->asym_p = p;
  n->asym_beta = beta;
  n->asym_c = c;
  return YoungFunction(std::move(n));
}

YoungFunction YoungFunction::product(const YoungFunction& a, const YoungFunction& b) {
  auto n = std::make_shared<Node>();
  n->family = Family::Product;
  n->left = a.node_;
  n->right = b.node_;
  n->asym_p = a.node_->asym_p + b.node_->asym_p;
  n->asym_beta = a.node_->asym_beta + b.node_->asym_beta;
  n->asym_c = a.node_->asym_c * b.node_->asym_c;
  return YoungFunction(std::move(n));
}

YoungFunction YoungFunction::conjugate_of(const YoungFunction& a) {
  double q = a.node_->asym_p;
  if (!(q > 1.0))
    throw DomainError("conjugate_of: requires a power tail with growth exponent > 1");
  auto n = std::make_shared<Node>();
  n->family = Family::Conjugate;
  n->left = a.node_;
  double qp = q / (q - 1.0);
  n->asym_p = qp;
  n->asym_beta = -a.node_->asym_beta * (qp - 1.0);
  n->asym_c = std::numeric_limits<double>::quiet_NaN();
  return YoungFunction(std::move(n));
}

namespace {

double node_eval(const YoungFunction::Node& n, double t);
double node_derivative(const YoungFunction::Node& n, double t);

// Legendre transform sup_{s>0}(st - A(s)) via golden-section on [0, s_hi],
// where A(s_hi)/s_hi >= t guarantees the maximizer lies inside.
double legendre_sup(const YoungFunction::Node& a, double t) {
  if (t == 0.0) return 0.0;
  if (!(a.asym_p > 1.0))
    throw DomainError("conjugate: infinite for linear-growth functions");
  double s_hi = 1.0;
  int guard = 0;
  while (node_eval(a, s_hi) < t * s_hi) {
    s_hi *= 2.0;
    if (++guard > 1000 || !std::isfinite(s_hi))
      throw ConvergenceError("conjugate: bracket expansion failed");
  }
  double lo = 0.0, hi = s_hi;
  const double gr = 0.6180339887498949;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = t * c - node_eval(a, c);
  double fd = t * d - node_eval(a, d);
  for (int it = 0; it < 110 && (hi - lo) > 1e-14 * s_hi; ++it) {
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = t * d - node_eval(a, d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = t * c - node_eval(a, c);
    }
  }
  return std::max({fc, fd, 0.0});
}

// Maximizer of s -> st - A(s): the unique root of A'(s) = t.
double legendre_argmax(const YoungFunction::Node& a, double t) {
  if (t <= 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (node_derivative(a, hi) < t) {
    hi *= 2.0;
    if (++guard > 1000 || !std::isfinite(hi))
      throw ConvergenceError("conjugate derivative: bracket expansion failed");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (node_derivative(a, mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double node_eval(const YoungFunction::Node& n, double t) {
  switch (n.family) {
    case YoungFunction::Family::Power:
      return n.c * std::pow(t, n.p);
    case YoungFunction::Family::PowerLog:
      if (t == 0.0) return 0.0;
      return n.c * std::pow(t, n.p) * std::pow(log_ept(t), n.beta);
    case YoungFunction::Family::Product:
      return node_eval(*n.left, t) * node_eval(*n.right, t);
    case YoungFunction::Family::Conjugate: {
      // closed form for pure powers: inner c s^p
      if (n.left->family == YoungFunction::Family::Power && n.left->p > 1.0) {
        double p = n.left->p, c = n.left->c;
        if (t == 0.0) return 0.0;
        double s = std::pow(t / (c * p), 1.0 / (p - 1.0));
        return t * s - c * std::pow(s, p);
      }
      return legendre_sup(*n.left, t);
    }
  }
  return 0.0;
}

double node_derivative(const YoungFunction::Node& n, double t) {
  switch (n.family) {
    case YoungFunction::Family::Power:
      return n.c * n.p * std::pow(t, n.p - 1.0);
    case YoungFunction::Family::PowerLog: {
      if (t == 0.0) return n.p > 1.0 ? 0.0 : n.c;
      double L = log_ept(t);
      return n.c * std::pow(t, n.p - 1.0) * std::pow(L, n.beta - 1.0) *
             (n.p * L + n.beta * t / (kE + t));
    }
    case YoungFunction::Family::Product:
      return node_derivative(*n.left, t) * node_eval(*n.right, t) +
             node_eval(*n.left, t) * node_derivative(*n.right, t);
    case YoungFunction::Family::Conjugate:
      return legendre_argmax(*n.left, t);
  }
  return 0.0;
}

}  // namespace

double YoungFunction::eval(double t) const {
  require_finite_nonneg(t, "YoungFunction::eval");
  return node_eval(*node_, t);
}

double YoungFunction::derivative(double t) const {
  require_finite_nonneg(t, "YoungFunction::derivative");
  return node_derivative(*node_, t);
}

double YoungFunction::inverse(double y) const {
  require_finite_nonneg(y, "YoungFunction::inverse");
  if (y == 0.0) return 0.0;
  // seed from the tail power, then establish a bracket geometrically
  double seed = std::pow(y / (std::isnan(node_->asym_c) ? 1.0 : node_->asym_c),
                         1.0 / node_->asym_p);
  if (!std::isfinite(seed) || seed <= 0.0) seed = 1.0;
  double lo = seed, hi = seed;
  int guard = 0;
  while (node_eval(*node_, lo) > y) {
    lo *= 0.5;
    if (++guard > 1000) throw ConvergenceError("inverse: lower bracket expansion failed");
  }
  guard = 0;
  while (node_eval(*node_, hi) < y) {
    hi *= 2.0;
    if (++guard > 1000 || !std::isfinite(hi))
      throw ConvergenceError("inverse: upper bracket expansion failed");
  }
  // bisect to relative bracket width; the residual |A(t) - y| then sits well
  // inside 1e-12 * max(y, 1) across the whole range
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (node_eval(*node_, mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double YoungFunction::growth_exponent() const { return node_->asym_p; }
double YoungFunction::log_exponent() const { return node_->asym_beta; }
double YoungFunction::growth_coefficient() const { return node_->asym_c; }

bool YoungFunction::is_proper_young() const {
  return node_->asym_p > 1.0 || (node_->asym_p == 1.0 && node_->asym_beta > 0.0);
}

YoungFunction::Family YoungFunction::family() const { return node_->family; }
double YoungFunction::param_p() const { return node_->p; }
double YoungFunction::param_beta() const { return node_->beta; }
double YoungFunction::param_c() const { return node_->c; }

YoungFunction YoungFunction::factor_left() const { return YoungFunction(node_->left); }
YoungFunction YoungFunction::factor_right() const { return YoungFunction(node_->right); }
YoungFunction YoungFunction::conjugate_inner() const { return YoungFunction(node_->left); }

std::string YoungFunction::describe() const {
  std::ostringstream os;
  switch (node_->family) {
    case Family::Power:
      if (node_->c != 1.0) os << node_->c << "*";
      os << "t^" << node_->p;
      break;
    case Family::PowerLog:
      if (node_->c != 1.0) os << node_->c << "*";
      os << "t^" << node_->p << "*log(e+t)^" << node_->beta;
      break;
    case Family::Product:
      os << "(" << YoungFunction(node_->left).describe() << ")*("
         << YoungFunction(node_->right).describe() << ")";
      break;
    case Family::Conjugate:
      os << "conj(" << YoungFunction(node_->left).describe() << ")";
      break;
  }
  return os.str();
}

double conjugate(const YoungFunction& A, double t) {
  require_finite_nonneg(t, "conjugate");
  return YoungFunction::conjugate_of(A).eval(t);
}

namespace {

// Flattened power-log representation of the B_p integrand numerator:
// A(t) = c * t^q * log(e+t)^beta (exact for power/power-log and their products;
// a calibrated model for conjugates).
struct Flat {
  double c, q, beta;
  bool exact;
};

Flat flatten(const YoungFunction& A) {
  using F = YoungFunction::Family;
  switch (A.family()) {
    case F::Power:
      return {A.param_c(), A.param_p(), 0.0, true};
    case F::PowerLog:
      return {A.param_c(), A.param_p(), A.param_beta(), true};
    case F::Product: {
      Flat l = flatten(A.factor_left());
      Flat r = flatten(A.factor_right());
      return {l.c * r.c, l.q + r.q, l.beta + r.beta, l.exact && r.exact};
    }
    case F::Conjugate: {
      // pure-power conjugates are closed form, hence exact power-logs
      const YoungFunction& inner = A.conjugate_inner();
      double q = A.growth_exponent(), beta = A.log_exponent();
      if (inner.family() == F::Power) {
        double p = inner.param_p(), c = inner.param_c();
        // conj(c t^p)(t) = c' t^{p'} with c' = (p-1) p^{-p'} c^{1-p'}
        double pp = p / (p - 1.0);
        double cc = (p - 1.0) * std::pow(p, -pp) * std::pow(c, 1.0 - pp);
        return {cc, pp, 0.0, true};
      }
      // calibrate the model coefficient at one far point
      double x_cal = 40.0;
      double t_cal = std::exp(x_cal);
      double v = A.eval(t_cal);
      double c = v / (std::pow(t_cal, q) * std::pow(log_ept(t_cal), beta));
      return {c, q, beta, false};
    }
  }
  return {1.0, 2.0, 0.0, false};
}

// Adaptive Simpson on [a, b].
template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

BpReport bp_constant(const YoungFunction& A, double p) {
  if (!(p > 1.0)) throw DomainError("bp_constant: requires p > 1");
  if (!A.is_proper_young())
    throw DomainError("bp_constant: rejects linear-growth members");
  Flat fl = flatten(A);
  BpReport rep;
  rep.p = p;

  const double tol_eq = 1e-12 * std::max(1.0, std::abs(p));
  bool same_power = std::abs(fl.q - p) <= tol_eq;
  if (fl.q > p + tol_eq || (same_power && fl.beta >= -1.0 - 1e-12)) {
    rep.divergent = true;
    rep.value = std::numeric_limits<double>::infinity();
    return rep;
  }

  // integrand after t = e^x:  c * exp((q-p) x) * L(x)^beta,  L(x) = log(e+e^x)
  auto g = [&](double x) {
    double L = log_ept_of_exp(x);
    return fl.c * std::exp((fl.q - p) * x) * std::pow(L, fl.beta);
  };

  double X, tail_term = 0.0, tail_err = 0.0;
  if (same_power) {
    // integrand ~ c x^beta with beta < -1: closed-form tail, exact to roundoff
    // since log(e+e^x) == x in double precision for x >= ~40
    X = 64.0;
    tail_term = fl.c * std::pow(X, fl.beta + 1.0) / (-fl.beta - 1.0);
    tail_err = 1e-9 * std::abs(tail_term);
  } else {
    // exponential decay exp(-(p-q)x): extend X until the explicit tail bound
    // is negligible, then count the whole tail as error
    double a = p - fl.q;
    X = std::max(8.0, 40.0 / a);
    auto tail_bound = [&](double x) {
      if (fl.beta <= 0.0)
        return fl.c * std::exp(-a * x) * std::pow(log_ept_of_exp(x), fl.beta) / a;
      return 2.0 * fl.c * std::exp(-a * x) * std::pow(x + 1.0, fl.beta) / a;
    };
    for (int rounds = 0; rounds < 200; ++rounds) {
      bool geometric_ok = fl.beta <= 0.0 || a * (X + 1.0) >= 2.0 * fl.beta;
      if (geometric_ok && (tail_bound(X) <= 1e-10 * std::max(1.0, fl.c / a) || X > 1e6))
        break;
      X *= 1.5;
    }
    tail_err = tail_bound(X);
  }

  double quad_tol = 1e-11 * std::max(1.0, fl.c);
  double body = adaptive_simpson(g, 0.0, X, quad_tol);
  rep.value = body + tail_term;
  rep.truncation_point = X > 700.0 ? std::numeric_limits<double>::max() : std::exp(X);
  rep.quadrature_error_bound = 16.0 * quad_tol + tail_err;
  return rep;
}

double holder_compatibility(const YoungFunction& A, const YoungFunction& B,
                            const YoungFunction& C, std::span<const double> t_grid) {
  if (t_grid.empty()) throw ParameterError("holder_compatibility: empty grid");
  double worst = 0.0;
  for (double t : t_grid) {
    if (!(t >= 1.0)) throw ParameterError("holder_compatibility: grid points must be >= 1");
    double r = B.inverse(t) * C.inverse(t) / A.inverse(t);
    worst = std::max(worst, r);
  }
  return worst;
}

double comparison_constant(const YoungFunction& A, const YoungFunction& B,
                           std::span<const double> t_grid) {
  if (t_grid.empty()) throw ParameterError("comparison_constant: empty grid");
  double worst = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw ParameterError("comparison_constant: grid points must be positive");
    worst = std::max(worst, B.inverse(A.eval(t)) / t);
  }
  return worst;
}

ConvexityWitness check_midpoint_convexity(const YoungFunction& A, double t_lo, double t_hi,
                                          int n_points) {
  std::vector<double> grid(n_points);
  double llo = std::log(t_lo), lhi = std::log(t_hi);
  for (int i = 0; i < n_points; ++i)
    grid[i] = std::exp(llo + (lhi - llo) * i / std::max(1, n_points - 1));
  ConvexityWitness w;
  for (int i = 0; i < n_points; ++i) {
    for (int j = i + 1; j < n_points; ++j) {
      double s = grid[i], t = grid[j];
      double mid = A.eval(0.5 * (s + t));
      double chord = 0.5 * (A.eval(s) + A.eval(t));
      double slack = std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * chord);
      if (mid > chord + slack) {
        w.ok = false;
        w.s = s;
        w.t = t;
        w.midpoint_value = mid;
        w.chord_value = chord;
        return w;
      }
    }
  }
  return w;
}

std::span<const double> default_holder_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (double x = 0.0; x <= 12.0; x += 0.0625) g.push_back(std::pow(10.0, x));
    return g;
  }();
  return {grid.data(), grid.size()};
}

}  // namespace bumplab
