#include "hrl/quotients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hrl/corpus.hpp"
#include "hrl/functionals.hpp"
#include "hrl/optimize.hpp"
#include "hrl/rng.hpp"

namespace hrl {

CatalogEntry catalog(std::string_view name, int dim, double p) {
  CatalogEntry e{std::string(name), dim, p, 0.0, {}};
  if (name == "hardy") {
    e.validity = "N >= 1, p >= 1, p != N";
    if (dim < 1 || !(p >= 1.0) || p == dim) throw std::invalid_argument("catalog hardy: " + e.validity);
    e.value = std::pow(std::abs(p / (dim - p)), p);
  } else if (name == "rellich") {
    e.validity = "N >= 3, 1 < p < N/2";
    if (dim < 3 || !(p > 1.0) || !(p < 0.5 * dim))
      throw std::invalid_argument("catalog rellich: " + e.validity);
    e.value = std::pow(p * p / (dim * (dim - 2.0 * p) * (p - 1.0)), p);
  } else if (name == "hardy_rellich_p2") {
    e.validity = "N >= 3, p = 2";
    if (dim < 3 || p != 2.0) throw std::invalid_argument("catalog hardy_rellich_p2: " + e.validity);
    e.value = dim >= 5 ? 4.0 / (dim * dim) : (dim == 4 ? 1.0 / 3.0 : 36.0 / 25.0);
  } else {
    throw std::invalid_argument("catalog: unknown constant '" + std::string(name) + "'");
  }
  return e;
}

QuotientReport max_generalized_eig(const QuadraticFormPair& pair) {
  QuotientReport out;
  out.solver = Solver::Eig;
  out.ell = pair.spec.ell;
  const auto eig = generalized_eigen(pair.numerator, pair.denominator);
  if (eig.degenerate) {
    out.degenerate = true;
    return out;
  }
  const std::size_t n = eig.values.size();
  out.value = eig.values.back();
  out.argmax.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.argmax[i] = eig.vectors(i, n - 1);
  out.residual = generalized_residual(pair.numerator, pair.denominator, out.value, out.argmax);
  out.iterations = static_cast<int>(n);
  return out;
}

std::vector<double> log_uniform_breaks(double r_min, double r_max, int intervals) {
  if (!(r_min > 0.0 && r_max > r_min) || intervals < 1)
    throw std::invalid_argument("log_uniform_breaks: need 0 < r_min < r_max and intervals >= 1");
  const double lo = std::log(r_min), hi = std::log(r_max);
  std::vector<double> out(intervals + 1);
  for (int k = 0; k <= intervals; ++k) out[k] = std::exp(lo + (hi - lo) * k / intervals);
  out.front() = r_min;
  out.back() = r_max;
  return out;
}

std::vector<double> graded_log_breaks(double r_min, double r_max, int intervals, int end_intervals,
                                      double ratio) {
  if (!(r_min > 0.0 && r_max > r_min) || end_intervals < 0 || intervals < 2 * end_intervals + 1 ||
      !(ratio > 0.0 && ratio <= 1.0))
    throw std::invalid_argument("graded_log_breaks: invalid grading");
  std::vector<double> widths;
  for (int k = end_intervals; k >= 1; --k) widths.push_back(std::pow(ratio, k));
  widths.insert(widths.end(), intervals - 2 * end_intervals, 1.0);
  for (int k = 1; k <= end_intervals; ++k) widths.push_back(std::pow(ratio, k));
  double total = 0.0;
  for (double w : widths) total += w;
  const double lo = std::log(r_min), span = std::log(r_max) - lo;
  std::vector<double> out{r_min};
  double acc = 0.0;
  for (double w : widths) {
    acc += w;
    out.push_back(std::exp(lo + span * acc / total));
  }
  out.back() = r_max;
  return out;
}

SharpResult reproduce_sharp(Problem problem, int dim, const SharpOptions& options) {
  const int intervals = options.basis + options.degree;
  const auto breaks = graded_log_breaks(options.r_min, options.r_max, intervals,
                                        std::min(options.end_intervals, (intervals - 1) / 2),
                                        options.end_ratio);
  const int top = dim >= 2 ? options.max_ell : 0;
  SharpResult result;
  for (int ell = 0; ell <= top; ++ell) {
    FormSpec spec;
    spec.problem = problem;
    spec.params = {dim, 2.0, 0.0};
    spec.ell = ell;
    auto report = max_generalized_eig(assemble_forms(spec, breaks, options.degree));
    report.ell = ell;
    result.per_mode.push_back(report);
    if (!report.degenerate && (result.per_mode.size() == 1 || report.value > result.best.value))
      result.best = report;
  }
  return result;
}

DegeneracySeries rellich_degeneracy(std::span<const double> R, int ell, double ramp_factor) {
  DegeneracySeries out;
  const SpaceParams params{2, 2.0, 0.0};
  for (double r : R) {
    const auto profile = log_plateau_profile(r, ramp_factor);
    const auto field = ell == 0 ? make_field(FieldKind::Radial, profile, 0, params)
                                : make_field(FieldKind::Separable, profile, ell, params);
    DegeneracyPoint pt;
    pt.R = r;
    pt.lap = rhs_laplacian(field);
    pt.rellich = hardy_rellich_terms(field).rellich;
    pt.quotient = pt.rellich > 0.0 ? pt.lap / pt.rellich : 0.0;
    out.points.push_back(pt);
  }
  out.strictly_decreasing = !out.points.empty();
  out.floor = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    out.floor = std::min(out.floor, out.points[k].quotient);
    if (k > 0 && !(out.points[k].quotient < out.points[k - 1].quotient)) out.strictly_decreasing = false;
  }
  if (out.points.empty()) out.floor = 0.0;
  return out;
}

const char* pn_problem_name(PNProblem problem) {
  switch (problem) {
    case PNProblem::ThmVsSurrogate: return "thm_vs_surrogate";
    case PNProblem::ThmVsLap: return "thm_vs_lap";
    case PNProblem::ThmVsHessExact: return "thm_vs_hess_exact";
  }
  return "unknown";
}

namespace {

double denominator(PNProblem problem, const FunctionalReport& r) {
  switch (problem) {
    case PNProblem::ThmVsSurrogate: return r.rhs_surrogate;
    case PNProblem::ThmVsLap: return r.rhs_lap;
    case PNProblem::ThmVsHessExact: return r.rhs_hess_exact;
  }
  return 0.0;
}

}  // namespace

QuotientReport maximize_ratio_pN(PNProblem problem, SpaceParams params, const PNOptions& options) {
  if (params.dim < 1) throw std::invalid_argument("maximize_ratio_pN: N >= 1 required");
  params.p = params.dim;
  if (problem == PNProblem::ThmVsSurrogate) {
    if (auto v = validate(params, Restriction::RadialStep))
      throw std::invalid_argument("maximize_ratio_pN: " + *v);
  }
  if (options.starts < 1 || options.budget < options.starts)
    throw std::invalid_argument("maximize_ratio_pN: need starts >= 1 and budget >= starts");
  const int ell = (params.dim == 2 || params.dim == 3) ? options.ell : 0;
  if (options.knots < options.degree + 3)
    throw std::invalid_argument("maximize_ratio_pN: knots must be >= degree + 3");
  auto breaks = log_uniform_breaks(options.r_min, options.r_max, options.knots - 1);
  const AngularMode mode = ell == 0 ? AngularMode::constant(params.dim) : AngularMode(ell, params.dim);
  const FieldEvaluator evaluator(breaks, options.degree, mode, params);
  const std::size_t n = evaluator.basis_size();

  const auto objective = [&](std::span<const double> c) {
    const auto r = evaluator.evaluate(c);
    const double den = denominator(problem, r);
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    return -r.lhs_grad_quotient / den;
  };

  const int per_start = options.budget / options.starts;
  std::vector<NelderMeadResult> runs(options.starts);
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < options.starts; ++s) {
    Rng rng(child_seed(options.seed, static_cast<std::uint64_t>(s)));
    std::vector<double> x0(n);
    for (auto& v : x0) v = rng.uniform(-1.0, 1.0);
    NelderMeadOptions nm;
    nm.max_evaluations = per_start;
    nm.initial_step = 0.25;
    runs[s] = nelder_mead(objective, std::move(x0), nm);
  }

  QuotientReport out;
  out.solver = Solver::NelderMead;
  out.ell = ell;
  out.budget = options.budget;
  bool all_converged = true;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& run : runs) {  // seed order
    out.iterations += run.evaluations;
    all_converged = all_converged && run.converged;
    if (run.value < best) {
      best = run.value;
      out.argmax = run.x;
    }
  }
  out.value = std::isfinite(best) ? -best : 0.0;
  out.budget_exhausted = !all_converged;
  if (problem == PNProblem::ThmVsSurrogate) out.tracked_bound = tracked_constant(params.dim, params.a);
  return out;
}

std::vector<PlateauRatio> plateau_ratio_series(PNProblem problem, int dim, std::span<const double> R) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("plateau_ratio_series: N in {2,3}");
  std::vector<PlateauRatio> out;
  for (double r : R) {
    const auto field = make_field(FieldKind::Separable, harmonic_plateau_profile(r), 1,
                                  SpaceParams::critical(dim));
    const auto rep = evaluate_report(field);
    const double den = denominator(problem, rep);
    out.push_back({r, den > 0.0 ? rep.lhs_grad_quotient / den : 0.0});
  }
  return out;
}

double tracked_constant(int dim, double a) {
  if (!(a < 1.0)) throw std::invalid_argument("tracked_constant: a < 1 required");
  if (dim < 1) throw std::invalid_argument("tracked_constant: N >= 1 required");
  if (dim == 1) return 1.0 / (1.0 - a);
  const double n = dim;
  return std::pow(2.0, 0.5 * n - 1.0) * (1.0 / (1.0 - a) + std::pow(n / (n - a), n));
}

WeightClass weight_class_check(int dim, double a, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("weight_class_check: q > 1 required");
  return {-dim < a && a < dim * (q - 1.0), a > -dim};
}

ChainCheck surrogate_chain_check(const TestField& field, double a) {
  const auto f = field.with_params(SpaceParams::critical(field.dim(), a));
  const auto r = evaluate_report(f);
  ChainCheck out;
  out.lhs = r.lhs_grad_quotient;
  out.bound = tracked_constant(f.dim(), a) * r.rhs_surrogate;
  out.ratio = out.bound > 0.0 ? out.lhs / out.bound : 0.0;
  return out;
}

ChainCheck radial_chain_check(const TestField& field, double a) {
  if (field.kind() != FieldKind::Radial && field.mode().ell() != 0)
    throw std::invalid_argument("radial_chain_check: radial field required");
  if (!(a < 1.0)) throw std::invalid_argument("radial_chain_check: a < 1 required");
  const auto f = field.with_params(SpaceParams::critical(field.dim(), a));
  const auto r = evaluate_report(f);
  ChainCheck out;
  out.lhs = r.lhs_grad_quotient;
  out.bound = r.radial_second / (1.0 - a);
  out.ratio = out.bound > 0.0 ? out.lhs / out.bound : 0.0;
  return out;
}

}  // namespace hrl
