#include "hrl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hrl {

namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");
  NelderMeadResult result;
  const auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  const auto budget_left = [&] { return result.evaluations < options.max_evaluations; };

  std::vector<double> best = std::move(x0);
  double best_value = eval(best);

  for (int round = 0; round <= options.restarts && budget_left(); ++round) {
    double scale = 0.0;
    for (double v : best) scale = std::max(scale, std::abs(v));
    const double step = options.initial_step * std::max(scale, 1.0);

    Simplex s;
    s.points.assign(n + 1, best);
    s.values.assign(n + 1, best_value);
    for (std::size_t k = 0; k < n && budget_left(); ++k) {
      s.points[k + 1][k] += step;
      s.values[k + 1] = eval(s.points[k + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    bool converged = false;
    while (budget_left()) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
      const double spread = s.values[hi] - s.values[lo];
      if (std::isfinite(spread) &&
          spread <= options.f_tolerance * (std::abs(s.values[lo]) + options.f_tolerance)) {
        converged = true;
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == hi) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.points[k][i] / n;
      }
      const auto along = [&](double t, std::vector<double>& out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (s.points[hi][i] - centroid[i]);
      };

      along(-1.0, trial);
      const double fr = eval(trial);
      if (fr < s.values[lo]) {
        along(-2.0, trial2);
        const double fe = budget_left() ? eval(trial2) : std::numeric_limits<double>::infinity();
        if (fe < fr) {
          s.points[hi] = trial2;
          s.values[hi] = fe;
        } else {
          s.points[hi] = trial;
          s.values[hi] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.points[hi] = trial;
        s.values[hi] = fr;
        continue;
      }
      if (!budget_left()) break;
      // Outside contraction when the reflection beats the worst point, inside otherwise.
      const bool outside = fr < s.values[hi];
      along(outside ? -0.5 : 0.5, trial2);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : s.values[hi])) {
        s.points[hi] = trial2;
        s.values[hi] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n && budget_left(); ++k) {
        if (k == lo) continue;
        for (std::size_t i = 0; i < n; ++i)
          s.points[k][i] = s.points[lo][i] + 0.5 * (s.points[k][i] - s.points[lo][i]);
        s.values[k] = eval(s.points[k]);
      }
    }

    const auto it = std::min_element(s.values.begin(), s.values.end());
    const std::size_t k = static_cast<std::size_t>(it - s.values.begin());
    if (*it <= best_value) {
      best_value = *it;
      best = s.points[k];
    }
    result.converged = converged;
  }
  result.x = std::move(best);
  result.value = best_value;
  return result;
}

}  // namespace hrl
