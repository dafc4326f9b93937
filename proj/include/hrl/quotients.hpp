#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrl/forms.hpp"
#include "hrl/model.hpp"

namespace hrl {

/// Closed-form sharp constants.
struct CatalogEntry {
  std::string name;
  int dim = 0;
  double p = 2.0;
  double value = 0.0;
  std::string validity;
};
/// name in {"hardy", "rellich", "hardy_rellich_p2"}; throws
/// std::invalid_argument outside the inequality's validity range.
CatalogEntry catalog(std::string_view name, int dim, double p = 2.0);

enum class Solver { Eig, NelderMead };

struct QuotientReport {
  double value = 0.0;
  std::vector<double> argmax;
  int ell = 0;
  Solver solver = Solver::Eig;
  int budget = 0;
  int iterations = 0;
  std::optional<double> tracked_bound;
  bool degenerate = false;
  bool budget_exhausted = false;
  double residual = 0.0;  // eigen-residual (Eig only)
};

/// Largest mu with B c = mu A c.
QuotientReport max_generalized_eig(const QuadraticFormPair& pair);

/// `intervals` log-uniform spans on [r_min, r_max]; grids with the same
/// spacing are nested under widening, and doubling `intervals` nests them
/// under refinement.
std::vector<double> log_uniform_breaks(double r_min, double r_max, int intervals);

/// Log-spaced breakpoints whose last `end_intervals` intervals at each end
/// shrink geometrically by `ratio`.  The boundary basis functions vanish to
/// high order, so the refinement recovers resolution lost at the ends.
std::vector<double> graded_log_breaks(double r_min, double r_max, int intervals, int end_intervals,
                                      double ratio);

struct SharpOptions {
  double r_min = 1e-3;
  double r_max = 1e3;
  int basis = 120;
  int degree = 5;
  int max_ell = 3;
  int end_intervals = 8;  // graded intervals per end (0 gives log-uniform breaks)
  double end_ratio = 0.25;
};
struct SharpResult {
  QuotientReport best;
  std::vector<QuotientReport> per_mode;  // ell = 0..max_ell (ell = 0 only for N = 1)
};
/// p = 2 quotient maximized over the basis and the mode sweep.
SharpResult reproduce_sharp(Problem problem, int dim, const SharpOptions& options = {});

struct DegeneracyPoint {
  double R = 0.0;
  double lap = 0.0;      // \int |Lap u|^2
  double rellich = 0.0;  // \int u^2/|x|^4
  double quotient = 0.0;
};
struct DegeneracySeries {
  std::vector<DegeneracyPoint> points;
  bool strictly_decreasing = false;
  double floor = 0.0;  // minimum quotient over the grid
};
/// N = 2 plateau family g = r on [1, R] with logarithmic ramps, mode ell.
DegeneracySeries rellich_degeneracy(std::span<const double> R, int ell, double ramp_factor = 2.0);

enum class PNProblem { ThmVsSurrogate, ThmVsLap, ThmVsHessExact };
const char* pn_problem_name(PNProblem problem);

struct PNOptions {
  int starts = 20;
  int budget = 20000;  // total evaluations across starts
  double r_min = 0.2;
  double r_max = 5.0;
  int knots = 16;  // breakpoints
  int degree = 5;
  int ell = 1;  // forced to 0 outside N in {2,3}
  std::uint64_t seed = 1;
};
/// Multi-start Nelder-Mead on lhs_functional / denominator at p = N.  The
/// value is an empirical lower bound for the best constant; for
/// ThmVsSurrogate the tracked constant is attached as upper bound.
QuotientReport maximize_ratio_pN(PNProblem problem, SpaceParams params, const PNOptions& options = {});

/// lhs / denominator at p = N on the harmonic-plateau family.
struct PlateauRatio {
  double R = 0.0;
  double ratio = 0.0;
};
std::vector<PlateauRatio> plateau_ratio_series(PNProblem problem, int dim, std::span<const double> R);

/// 2^{N/2-1} (1/(1-a) + (N/(N-a))^N); 1/(1-a) for N = 1.
double tracked_constant(int dim, double a);

struct WeightClass {
  bool in_Aq = false;
  bool in_A_infinity = false;
};
WeightClass weight_class_check(int dim, double a, double q);

struct ChainCheck {
  double lhs = 0.0;
  double bound = 0.0;  // constant applied
  double ratio = 0.0;  // lhs / bound
};
/// lhs_functional against tracked_constant * rhs_surrogate, at p = N with
/// weight exponent a (the field's p and a are replaced).
ChainCheck surrogate_chain_check(const TestField& field, double a);
/// Radial fields: lhs against (1/(1-a)) \int |u_rr|^N |x|^a.
ChainCheck radial_chain_check(const TestField& field, double a);

}  // namespace hrl
