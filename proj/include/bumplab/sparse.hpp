#pragma once

#include <memory>
#include <vector>

#include "bumplab/space.hpp"
#include "bumplab/step.hpp"
#include "bumplab/young.hpp"

namespace bumplab {

// Comparison used for every stopping-cube selection: "norm exceeds level" with
// a relative slack absorbing the bisection tolerance, so threshold-exact
// examples select the same cubes the exact arithmetic would.
inline bool level_exceeds(double value, double level) {
  return value > level * (1.0 + 1e-9);
}

// Luxemburg norm of f on every cube, cube order = grid order (OpenMP over
// cubes; the serial variant is the reference the tests compare against).
std::vector<std::vector<double>> cube_norms(const StepFunction& f, const DyadicGrid& grid,
                                            const YoungFunction& Phi);
std::vector<std::vector<double>> cube_norms_serial(const StepFunction& f, const DyadicGrid& grid,
                                                   const YoungFunction& Phi);

// M_Phi f = sup over cubes containing x of ||f||_{Phi,Q}, as a step function
// on the refinement of f's breakpoints and the finest cube endpoints.
StepFunction dyadic_maximal(const StepFunction& f, const DyadicGrid& grid,
                            const YoungFunction& Phi);
StepFunction dyadic_maximal_serial(const StepFunction& f, const DyadicGrid& grid,
                                   const YoungFunction& Phi);

struct CubeRef {
  int gen = -1;
  int idx = -1;
  bool operator==(const CubeRef&) const = default;
};

struct StoppingCubes {
  double lambda = 0.0;
  std::vector<CubeRef> cubes;     // maximal cubes with ||f||_{Phi,Q} > lambda
  double achieved_upper = 0.0;    // max ||f||_{Phi,Qj} / lambda
  double upper_bound_constant;    // 1/epsilon from the grid
};

// Maximal disjoint cubes with ||f||_{Phi,Q} > lambda; their union is the
// superlevel set {M_Phi f > lambda}.  On the finite-measure window the level
// must not fall below the top-cube norms.
StoppingCubes cz_cubes(const StepFunction& f, const DyadicGrid& grid, const YoungFunction& Phi,
                       double lambda);

class SparseFamily {
 public:
  struct Member {
    CubeRef cube;
    IntervalSet witness;  // E(Q), pairwise disjoint across the family
    double level = 0.0;   // stopping level a^k that produced the cube
  };

  SparseFamily() = default;
  SparseFamily(std::shared_ptr<const DyadicGrid> grid, std::vector<Member> members);

  const DyadicGrid& grid() const { return *grid_; }
  std::shared_ptr<const DyadicGrid> grid_ptr() const { return grid_; }
  const std::vector<Member>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  // checked at construction; callable again on demand
  void check_invariants() const;  // throws CheckFailure with a witness

 private:
  std::shared_ptr<const DyadicGrid> grid_;
  std::vector<Member> members_;
};

struct LevelFamilyResult {
  SparseFamily family;
  int k_lo = 0, k_hi = -1;  // occupied stopping levels a^k
  double threshold = 0.0;   // max top-cube norm of f
};

// Stopping cubes of every level a^k at or above the admissible threshold,
// with witnesses E(Q_j^k) = Q_j^k minus the next level's cubes.
LevelFamilyResult sparse_from_levels(const StepFunction& f,
                                     std::shared_ptr<const DyadicGrid> grid,
                                     const YoungFunction& Phi, double a);

// T^S f = sum over members of (avg_Q f) chi_Q, exact step arithmetic.
StepFunction sparse_apply(const SparseFamily& S, const StepFunction& f);

// One bad part of a Calderon-Zygmund decomposition, kept in subtracted form
// b_j = (f - mean) chi_Q so that cube integrals cancel exactly: the stored
// mean is integral/mass with a power-of-two mass, making mean*mass == integral
// in double arithmetic.
struct CzPart {
  CubeRef cube;
  Interval box;
  double integral = 0.0;  // of f over the cube
  double mean = 0.0;      // f_Q
  StepFunction as_step;   // materialized (f - mean) chi_Q
};

struct CZDecomposition {
  double lambda = 0.0;
  std::vector<CubeRef> stopping_cubes;
  StepFunction good;           // g
  std::vector<CzPart> bad;     // b_j
  double good_bound_constant;  // recorded C with |g| <= C lambda
};

CZDecomposition cz_decompose(const StepFunction& f, std::shared_ptr<const DyadicGrid> grid,
                             double lambda);

// T^S applied to a bad part through its subtracted representation; on cubes
// containing the part's cube the contribution is integral - mean*mass = 0
// exactly, which is the cancellation the weak (1,1) argument rests on.
StepFunction sparse_apply_to_part(const SparseFamily& S, const CzPart& part);

struct DominationReport {
  StepFunction maximal;       // M f
  StepFunction sparse_side;   // a * T^S f
  double base_level = 0.0;    // a^{k_lo}
  double coarse_average = 0.0;
  int cells_checked = 0;
  int cells_sub_threshold = 0;  // compared against the coarsest-cube average
  int violations = 0;
};

// Pointwise M f <= a T^S f on the window; below the base stopping level both
// sides reduce to the coarsest cube and the comparison uses its average.
DominationReport maximal_dominated_by_sparse(const StepFunction& f,
                                             std::shared_ptr<const DyadicGrid> grid, double a);

}  // namespace bumplab
