#include "bumplab/hilbert.hpp"

#include <cmath>
#include <vector>

#include "bumplab/errors.hpp"
#include "bumplab/parallel.hpp"

namespace bumplab {

namespace {

// antiderivative of log|t| extended continuously by F(0) = 0
double F(double t) {
  if (t == 0.0) return 0.0;
  return t * std::log(std::abs(t)) - t;
}

StepFunction hilbert_impl(const StepFunction& f, Interval window, int level, bool parallel) {
  if (window.empty()) throw ParameterError("hilbert_apply: empty window");
  if (level > 0 || level < -30) throw ParameterError("hilbert_apply: level in [-30, 0]");
  if (f.is_zero()) return {};
  Interval supp = f.support_box();
  if (!std::isfinite(supp.lo) || !std::isfinite(supp.hi))
    throw DomainError("hilbert_apply: f must have compact support");

  double h = std::ldexp(1.0, level);
  auto n_cells = static_cast<std::int64_t>(std::ceil(window.length() / h - 1e-12));
  if (n_cells < 1 || n_cells > 8'000'000)
    throw ParameterError("hilbert_apply: window/resolution would create too many cells");

  std::vector<double> bp(static_cast<std::size_t>(n_cells) + 1);
  for (std::int64_t i = 0; i <= n_cells; ++i)
    bp[static_cast<std::size_t>(i)] = window.lo + std::ldexp(static_cast<double>(i), level);
  bp.back() = std::min(bp.back(), window.hi);

  const auto& fb = f.breakpoints();
  const auto& fv = f.values();
  std::vector<double> out(static_cast<std::size_t>(n_cells), 0.0);
  auto body = [&](std::int64_t i) {
    double c = bp[static_cast<std::size_t>(i)];
    double d = bp[static_cast<std::size_t>(i) + 1];
    double acc = 0.0;
    for (std::size_t k = 0; k < fv.size(); ++k) {
      if (fv[k] == 0.0) continue;
      double a = fb[k], b = fb[k + 1];
      acc += fv[k] * (F(d - a) - F(c - a) - F(d - b) + F(c - b));
    }
    out[static_cast<std::size_t>(i)] = acc / (d - c);
  };
  if (parallel)
    par::parallel_for(n_cells, body);
  else
    par::serial_for(n_cells, body);
  return StepFunction(std::move(bp), std::move(out));
}

}  // namespace

StepFunction hilbert_apply(const StepFunction& f, Interval window, int level) {
  return hilbert_impl(f, window, level, true);
}

StepFunction hilbert_apply_serial(const StepFunction& f, Interval window, int level) {
  return hilbert_impl(f, window, level, false);
}

}  // namespace bumplab
