#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bumplab {

// Half-open interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool empty() const { return !(hi > lo); }
  bool contains(double x) const { return x >= lo && x < hi; }
  bool contains(const Interval& o) const { return o.empty() || (o.lo >= lo && o.hi <= hi); }
};

// Finite union of disjoint half-open intervals, kept sorted and merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv);
  explicit IntervalSet(std::vector<Interval> parts);  // normalizes

  double measure() const;
  bool empty() const { return parts_.empty(); }
  bool contains(double x) const;
  const std::vector<Interval>& parts() const { return parts_; }

  IntervalSet intersect(Interval window) const;
  friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);
  friend bool sets_disjoint(const IntervalSet& a, const IntervalSet& b);

 private:
  void normalize();
  std::vector<Interval> parts_;
};

// One constant piece of a function restricted to a set: mass = measure of the
// piece, value = |function| there.  Zero-valued regions are represented
// implicitly by the total measure of the ambient set.
struct WeightedCell {
  double mass;
  double value;
};

// Piecewise-constant function on the line with sorted breakpoints, zero
// outside [breakpoints.front(), breakpoints.back()).  Values may be signed
// (decomposition parts, transform outputs); operations that require
// nonnegativity check it at the call site.  All integrals are exact finite
// sums over cell overlaps.
class StepFunction {
 public:
  StepFunction() = default;  // identically zero
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(Interval on, double value);
  static StepFunction indicator(Interval on) { return constant(on, 1.0); }

  bool is_zero() const { return values_.empty(); }
  std::size_t cells() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

  double value_at(double x) const;
  double max_abs() const;
  double max_abs_on(Interval window) const;
  double min_value() const;
  bool nonnegative() const;
  Interval bounding_box() const;  // of the breakpoint range
  Interval support_box() const;   // tight around nonzero cells

  double integral() const;
  double integral(Interval window) const;
  double integral(const IntervalSet& set) const;

  // |f| pieces with nonzero value overlapping the window, for Luxemburg norms.
  void abs_cells_on(Interval window, std::vector<WeightedCell>& out) const;
  void abs_cells_on(const IntervalSet& set, std::vector<WeightedCell>& out) const;

  StepFunction restrict_to(Interval window) const;

  friend StepFunction sf_scale(const StepFunction& f, double c);
  friend StepFunction sf_combine(const StepFunction& a, const StepFunction& b,
                                 const std::function<double(double, double)>& op);
  friend StepFunction sf_add(const StepFunction& a, const StepFunction& b);
  friend StepFunction sf_sub(const StepFunction& a, const StepFunction& b);
  friend StepFunction sf_mul(const StepFunction& a, const StepFunction& b);
  friend StepFunction sf_max(const StepFunction& a, const StepFunction& b);
  // pointwise |f|^e on nonzero cells (0 stays 0)
  friend StepFunction sf_pow(const StepFunction& f, double e);
  friend StepFunction sf_floor_at(const StepFunction& f, Interval window, double tau);
  StepFunction translate(double delta) const;

 private:
  // strictly increasing; values_[i] lives on [breaks_[i], breaks_[i+1])
  std::vector<double> breaks_;
  std::vector<double> values_;
};

}  // namespace bumplab
