#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bumplab/step.hpp"

namespace bumplab {

// Finite quasi-metric measure space: a distance table, point masses, and the
// measured characteristic constants (quasi-triangle K by exhaustive triple
// scan, doubling constant by a radius sweep).
class FiniteSpace {
 public:
  static FiniteSpace from_table(std::vector<double> dist_row_major, std::vector<double> mass);

  int size() const { return n_; }
  double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  double mass(int i) const { return mass_[i]; }
  const std::vector<double>& masses() const { return mass_; }
  const std::vector<double>& dist_table() const { return dist_; }
  double total_mass() const { return total_mass_; }
  double quasi_triangle_K() const { return K_; }
  double doubling_constant() const { return doubling_; }
  double diameter() const { return diameter_; }
  double min_positive_distance() const { return min_dist_; }

  double ball_mass(int center, double r) const;  // strict inequality dist < r
  std::vector<int> ball_points(int center, double r) const;

 private:
  FiniteSpace() = default;
  int n_ = 0;
  std::vector<double> dist_;
  std::vector<double> mass_;
  double K_ = 1.0, doubling_ = 1.0, diameter_ = 0.0, min_dist_ = 0.0, total_mass_ = 0.0;
};

FiniteSpace make_circle_space(int n);
// Uniform points in the unit square under the sup metric, masses in [0.5, 1.5].
FiniteSpace make_random_planar_space(int n, std::uint64_t seed);

struct Cube {
  int id = -1;  // global id within its grid
  int gen = -1;
  int index_in_gen = -1;
  int parent = -1;  // global id, -1 at the top generation
  std::vector<int> children;
  double mass = 0.0;
  // line cubes
  Interval box;
  double center = 0.0;
  std::int64_t lattice = 0;  // m in [shift + m 2^j, shift + (m+1) 2^j)
  // finite cubes
  std::vector<int> points;  // sorted member indices
  int center_point = -1;
};

// Nested generations of cubes (coarse to fine) over either a line window with
// Lebesgue measure or a FiniteSpace.  Immutable once built.
class DyadicGrid {
 public:
  enum class Kind { Line, Finite };

  struct Constants {
    double eta = 0.5;        // scale ratio between consecutive generations
    double epsilon = 0.5;    // min child/parent mass ratio (achieved)
    double outer_C = 1.0;    // Q inside the closed ball of radius outer_C * scale
    double inner_c = 1.0;    // open ball of radius inner_c * scale inside Q
  };

  Kind kind = Kind::Line;
  double shift = 0.0;                        // line grids
  Interval window;                           // effective covered window X (line)
  int level_fine = 0, level_coarse = 0;      // dyadic exponents: lengths 2^j (line)
  std::shared_ptr<const FiniteSpace> space;  // finite grids
  std::vector<double> scales;                // per-generation scale
  std::vector<std::vector<Cube>> gens;       // gens[0] = coarsest
  Constants constants;

  int generations() const { return static_cast<int>(gens.size()); }
  std::size_t cube_count() const;
  const Cube& cube(int gen, int idx) const { return gens[gen][idx]; }
  const Cube* parent_of(const Cube& q) const;
  double mu_total() const;

  // line helpers
  int leaf_index(double x) const;  // finest-generation cube containing x
  const Cube* smallest_cube_containing(Interval iv) const;
  bool resolves(const StepFunction& f) const;  // f constant on every finest cube
};

DyadicGrid line_grid(double shift, int level_min, int level_max, Interval window);
DyadicGrid finite_grid(std::shared_ptr<const FiniteSpace> space, double eta, std::uint64_t seed);
double default_finite_eta(const FiniteSpace& space);  // 1 / (12 K^3)

struct GridCheckItem {
  bool ok = true;
  std::string witness;
  double achieved = 0.0;
};

// Result of checking the five grid axioms: per-generation partition of X,
// nested-or-disjoint cubes, parent/child existence and uniqueness, child mass
// ratio >= epsilon, and the inner/outer ball sandwich around each center.
struct GridReport {
  GridCheckItem partition, nesting, lineage, mass_ratio, sandwich;
  DyadicGrid::Constants achieved;
  bool all_ok() const {
    return partition.ok && nesting.ok && lineage.ok && mass_ratio.ok && sandwich.ok;
  }
  std::string summary() const;
};

GridReport verify_grid(const DyadicGrid& g);

// Dilation lambda Q: the ball around the cube center of radius
// lambda * outer_C * scale.  Requires lambda >= 1.
Interval dilate(const DyadicGrid& g, const Cube& q, double lambda);
std::vector<int> dilate_points(const DyadicGrid& g, const Cube& q, double lambda);

// The standard shift family {0, 1/3, 2/3} realizing the ball-cover property on
// the line; each shift yields a genuine grid over a window padded to cover.
std::vector<DyadicGrid> line_shift_family(int level_min, int level_max, Interval window);

}  // namespace bumplab
