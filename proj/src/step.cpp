#include "bumplab/step.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bumplab/errors.hpp"

namespace bumplab {

IntervalSet::IntervalSet(Interval iv) {
  if (!iv.empty()) parts_.push_back(iv);
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void IntervalSet::normalize() {
  std::erase_if(parts_, [](const Interval& iv) { return iv.empty(); });
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : parts_) {
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  parts_ = std::move(merged);
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const Interval& iv : parts_) m += iv.length();
  return m;
}

bool IntervalSet::contains(double x) const {
  for (const Interval& iv : parts_)
    if (iv.contains(x)) return true;
  return false;
}

IntervalSet IntervalSet::intersect(Interval window) const {
  std::vector<Interval> out;
  for (const Interval& iv : parts_) {
    Interval clipped{std::max(iv.lo, window.lo), std::min(iv.hi, window.hi)};
    if (!clipped.empty()) out.push_back(clipped);
  }
  IntervalSet r;
  r.parts_ = std::move(out);
  return r;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return IntervalSet(std::move(parts));
}

IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (Interval iv : a.parts_) {
    double cursor = iv.lo;
    for (const Interval& cut : b.parts_) {
      if (cut.hi <= cursor) continue;
      if (cut.lo >= iv.hi) break;
      if (cut.lo > cursor) out.push_back({cursor, std::min(cut.lo, iv.hi)});
      cursor = std::max(cursor, cut.hi);
      if (cursor >= iv.hi) break;
    }
    if (cursor < iv.hi) out.push_back({cursor, iv.hi});
  }
  return IntervalSet(std::move(out));
}

bool sets_disjoint(const IntervalSet& a, const IntervalSet& b) {
  auto ia = a.parts().begin();
  auto ib = b.parts().begin();
  while (ia != a.parts().end() && ib != b.parts().end()) {
    if (ia->hi <= ib->lo)
      ++ia;
    else if (ib->hi <= ia->lo)
      ++ib;
    else
      return false;
  }
  return true;
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.empty() && values_.empty()) return;
  if (breaks_.size() != values_.size() + 1)
    throw DomainError("StepFunction: need one more breakpoint than values");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw DomainError("StepFunction: breakpoints must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("StepFunction: values must be finite");
}

StepFunction StepFunction::constant(Interval on, double value) {
  if (on.empty()) throw DomainError("StepFunction::constant: empty interval");
  return StepFunction({on.lo, on.hi}, {value});
}

double StepFunction::value_at(double x) const {
  if (is_zero() || x < breaks_.front() || x >= breaks_.back()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double StepFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double StepFunction::max_abs_on(Interval window) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (breaks_[i + 1] <= window.lo || breaks_[i] >= window.hi) continue;
    m = std::max(m, std::abs(values_[i]));
  }
  return m;
}

double StepFunction::min_value() const {
  double m = values_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::min(m, v);
  return m;
}

bool StepFunction::nonnegative() const {
  for (double v : values_)
    if (v < 0.0) return false;
  return true;
}

Interval StepFunction::bounding_box() const {
  if (is_zero()) return {0.0, 0.0};
  return {breaks_.front(), breaks_.back()};
}

Interval StepFunction::support_box() const {
  std::size_t first = values_.size(), last = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == values_.size()) return {0.0, 0.0};
  return {breaks_[first], breaks_[last + 1]};
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    s += values_[i] * (breaks_[i + 1] - breaks_[i]);
  return s;
}

double StepFunction::integral(Interval window) const {
  if (is_zero() || window.empty()) return 0.0;
  double s = 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), window.lo);
  std::size_t i = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  for (; i < values_.size() && breaks_[i] < window.hi; ++i) {
    double lo = std::max(breaks_[i], window.lo);
    double hi = std::min(breaks_[i + 1], window.hi);
    if (hi > lo) s += values_[i] * (hi - lo);
  }
  return s;
}

double StepFunction::integral(const IntervalSet& set) const {
  double s = 0.0;
  for (const Interval& iv : set.parts()) s += integral(iv);
  return s;
}

void StepFunction::abs_cells_on(Interval window, std::vector<WeightedCell>& out) const {
  if (is_zero() || window.empty()) return;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), window.lo);
  std::size_t i = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  for (; i < values_.size() && breaks_[i] < window.hi; ++i) {
    if (values_[i] == 0.0) continue;
    double lo = std::max(breaks_[i], window.lo);
    double hi = std::min(breaks_[i + 1], window.hi);
    if (hi > lo) out.push_back({hi - lo, std::abs(values_[i])});
  }
}

void StepFunction::abs_cells_on(const IntervalSet& set, std::vector<WeightedCell>& out) const {
  for (const Interval& iv : set.parts()) abs_cells_on(iv, out);
}

StepFunction StepFunction::restrict_to(Interval window) const {
  if (is_zero() || window.empty()) return {};
  std::vector<double> bp, vals;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double lo = std::max(breaks_[i], window.lo);
    double hi = std::min(breaks_[i + 1], window.hi);
    if (hi <= lo) continue;
    if (bp.empty()) bp.push_back(lo);
    bp.push_back(hi);
    vals.push_back(values_[i]);
  }
  if (vals.empty()) return {};
  return StepFunction(std::move(bp), std::move(vals));
}

StepFunction sf_scale(const StepFunction& f, double c) {
  std::vector<double> vals = f.values_;
  for (double& v : vals) v *= c;
  StepFunction out;
  out.breaks_ = f.breaks_;
  out.values_ = std::move(vals);
  return out;
}

StepFunction sf_combine(const StepFunction& a, const StepFunction& b,
                        const std::function<double(double, double)>& op) {
  if (a.is_zero() && b.is_zero()) return {};
  std::vector<double> bp;
  bp.reserve(a.breaks_.size() + b.breaks_.size());
  std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
             std::back_inserter(bp));
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> vals(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    vals[i] = op(a.value_at(bp[i]), b.value_at(bp[i]));
  // drop leading/trailing zero cells to keep representations tight
  std::size_t first = 0, last = vals.size();
  while (first < last && vals[first] == 0.0) ++first;
  while (last > first && vals[last - 1] == 0.0) --last;
  if (first == last) return {};
  StepFunction out;
  out.breaks_.assign(bp.begin() + static_cast<std::ptrdiff_t>(first),
                     bp.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  out.values_.assign(vals.begin() + static_cast<std::ptrdiff_t>(first),
                     vals.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

StepFunction sf_add(const StepFunction& a, const StepFunction& b) {
  return sf_combine(a, b, [](double x, double y) { return x + y; });
}

StepFunction sf_sub(const StepFunction& a, const StepFunction& b) {
  return sf_combine(a, b, [](double x, double y) { return x - y; });
}

StepFunction sf_mul(const StepFunction& a, const StepFunction& b) {
  return sf_combine(a, b, [](double x, double y) { return x * y; });
}

StepFunction sf_max(const StepFunction& a, const StepFunction& b) {
  return sf_combine(a, b, [](double x, double y) { return std::max(x, y); });
}

StepFunction sf_pow(const StepFunction& f, double e) {
  StepFunction out = f;
  for (double& v : out.values_) v = v == 0.0 ? 0.0 : std::pow(std::abs(v), e);
  return out;
}

StepFunction sf_floor_at(const StepFunction& f, Interval window, double tau) {
  return sf_max(f, StepFunction::constant(window, tau));
}

StepFunction StepFunction::translate(double delta) const {
  StepFunction out = *this;
  for (double& b : out.breaks_) b += delta;
  return out;
}

}  // namespace bumplab
