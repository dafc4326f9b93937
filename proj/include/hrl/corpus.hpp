#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hrl/model.hpp"
#include "hrl/rng.hpp"

namespace hrl {

enum class Family {
  RandomRadial,       // random coefficients, constant mode
  RandomSeparable,    // random coefficients, ell uniform in [0, max_ell]
  HarmonicPlateau,    // g = r on [1, R], linear-scale cutoffs on [1/2, 1] and [R, 2R]
  RellichDegeneracy,  // g = r on [1, R], logarithmic cutoffs of width ramp_factor * ln R
  NearExtremalHardy,  // truncated power r^{-(beta+1)/p} with logarithmic cutoffs
};

struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  double r_min = 0.2;
  double r_max = 5.0;
  int knots = 14;  // breakpoints per random profile
  int degree = 5;
  Family family = Family::RandomRadial;
  SpaceParams params{2, 2.0, 0.0};
  bool nonnegative = false;  // coefficients in [0, 1] instead of [-1, 1]
  int max_ell = 3;
  int ell = 1;                     // mode of the plateau families
  std::vector<double> plateau_R;   // one field per R for the plateau families
  double ramp_factor = 2.0;        // RellichDegeneracy ramp width in units of ln R
  double hardy_p = 2.0;            // NearExtremalHardy
  double hardy_beta = -3.0;
};

/// Deterministic corpus; identical specs give bitwise identical fields.
std::vector<TestField> generate(const CorpusSpec& spec);

/// C^4 monotone ramp: 0 for r <= inner, 1 for r >= outer, degree-9
/// smoothstep in between.
double plateau_cutoff(double r, double inner, double outer);

/// Random profile on [r_min, r_max] with jittered log-spaced breakpoints.
BSpline random_profile(Rng& rng, double r_min, double r_max, int knots, int degree,
                       bool nonnegative);

/// Spline whose coefficients are base(greville_i) * w_i, where w_i = 1 for
/// every basis function touching [plateau_lo, plateau_hi] and w_i follows
/// plateau_cutoff (in the variable `scale(r)`) across the free basis
/// functions of each ramp.  When base is a polynomial of degree <= degree
/// (e.g. r) the profile equals base exactly on the plateau.
BSpline ramped_profile(std::vector<double> breaks, int degree, double plateau_lo,
                       double plateau_hi, const std::function<double(double)>& base,
                       const std::function<double(double)>& scale);

BSpline harmonic_plateau_profile(double R, int degree = 5);
BSpline log_plateau_profile(double R, double ramp_factor, int degree = 5);
BSpline near_extremal_hardy_profile(double p, double beta, double r_min, double r_max,
                                    int degree = 5);

/// Log-spaced breakpoints from lo to hi with consecutive ratio <= max_ratio.
std::vector<double> log_breaks(double lo, double hi, double max_ratio);

}  // namespace hrl
