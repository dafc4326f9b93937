#include "hrl/cli/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "hrl/corpus.hpp"
#include "hrl/forms.hpp"
#include "hrl/functionals.hpp"
#include "hrl/ops1d.hpp"
#include "hrl/quadrature.hpp"
#include "hrl/quotients.hpp"
#include "hrl/rng.hpp"

namespace hrl::cli {

namespace {

std::atomic<bool> g_interrupt{false};

using Rows = std::vector<ReportRow>;

CorpusSpec base_corpus(const RunConfig& cfg, std::uint64_t seed, Family family, SpaceParams params,
                       int count) {
  CorpusSpec spec;
  spec.seed = seed;
  spec.count = static_cast<std::size_t>(count);
  spec.r_min = cfg.corpus.r_min;
  spec.r_max = cfg.corpus.r_max;
  spec.knots = cfg.corpus.knots;
  spec.degree = cfg.corpus.degree;
  spec.max_ell = cfg.corpus.max_ell;
  spec.family = family;
  spec.params = params;
  return spec;
}

std::vector<BSpline> profiles(const std::vector<TestField>& fields) {
  std::vector<BSpline> out;
  for (const auto& f : fields) out.push_back(f.profile());
  return out;
}

// ---------------------------------------------------------------- verify-1d

void verify_1d(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto seed = child_seed(cfg.seed, "verify-1d");
  const SpaceParams p1{1, 1.0, 0.0};
  const int count = std::max(cfg.corpus.count, 1);
  const auto signed_profiles =
      profiles(generate(base_corpus(cfg, child_seed(seed, "signed"), Family::RandomRadial, p1, count)));
  auto nonneg_spec = base_corpus(cfg, child_seed(seed, "nonnegative"), Family::RandomRadial, p1, count);
  nonneg_spec.nonnegative = true;
  const auto nonneg_profiles = profiles(generate(nonneg_spec));

  Rng rng(child_seed(seed, "volterra_bound"));
  const double exponents[] = {1.0, 1.5, 2.0, 3.0};
  double worst = 0.0;
  for (int c = 0; c < cfg.verify_1d.prop_cases && !interrupted(); ++c) {
    OneDimConfig oc;
    oc.p = exponents[rng.integer(0, 3)];
    oc.a_op = rng.uniform(1.2, 4.0);
    oc.b_op = rng.uniform(-1.0, 3.0);
    oc.alpha = oc.p * (oc.a_op - 1.0) - rng.uniform(0.05, 2.5);
    const bool tonelli = oc.p == 1.0;
    const auto& f = (tonelli ? nonneg_profiles : signed_profiles)[c % count];
    const auto check = prop_bound_check(oc, f);
    const RowContext ctx{"volterra_bound", 1, oc.p, oc.alpha, 0, 0.0, static_cast<std::uint64_t>(c)};
    rows.push_back(checked_row(ctx, "lhs_over_bound", check.ratio, 1.0, 1e-8));
    if (tonelli)
      rows.push_back(checked_row(ctx, "tonelli_gap", std::abs(check.lhs - check.bound) / check.bound, 1e-9, 0.0));
    worst = std::max(worst, check.ratio);
  }
  rows.push_back(exploratory_row({"volterra_bound", 1, 0, 0, 0, 0, seed}, "max_ratio", worst));

  const auto identity_profiles = profiles(generate(base_corpus(
      cfg, child_seed(seed, "identity"), Family::RandomRadial, p1, cfg.verify_1d.identity_profiles)));
  for (std::size_t k = 0; k < identity_profiles.size() && !interrupted(); ++k) {
    const auto res = identity_check(identity_profiles[k]);
    rows.push_back(checked_row({"identity", 1, 1, 0, 0, 0, k}, "residual_over_scale",
                               res.max_residual / res.scale, 1e-8, 0.0));
  }

  const auto hardy_profiles = profiles(generate(base_corpus(
      cfg, child_seed(seed, "hardy"), Family::RandomRadial, p1, cfg.verify_1d.hardy_profiles)));
  double cw_max = 0.0;
  for (std::size_t k = 0; k < hardy_profiles.size() && !interrupted(); ++k) {
    const auto cw = cw10_check(hardy_profiles[k]);
    cw_max = std::max(cw_max, cw.ratio);
    rows.push_back(checked_row({"cw10", 1, 1, 0, 0, 0, k}, "ratio", cw.ratio, 1.0, 1e-8));
    for (const auto& [p, beta] : {std::pair{2.0, -3.0}, std::pair{3.0, -4.0}, std::pair{1.5, 0.5}}) {
      const auto q = hardy1d_quotient(hardy_profiles[k], p, beta);
      rows.push_back(checked_row({"hardy1d", 1, p, beta, 0, 0, k}, "ratio_over_sharp",
                                 q.ratio / q.sharp, 1.0, 1e-8));
    }
  }
  rows.push_back(exploratory_row({"cw10", 1, 1, 0, 0, 0, seed}, "max_ratio", cw_max));

  for (const auto& [p, beta] : {std::pair{2.0, -3.0}, std::pair{3.0, -4.0}}) {
    const auto f = near_extremal_hardy_profile(p, beta, 1e-6, 1e6);
    const auto q = hardy1d_quotient(f, p, beta);
    const RowContext ctx{"hardy1d_near_extremal", 1, p, beta, 0, 1e6, seed};
    rows.push_back(checked_row(ctx, "ratio_over_sharp", q.ratio / q.sharp, 1.0, 1e-8));
    rows.push_back(checked_row(ctx, "shortfall", 1.0 - q.ratio / q.sharp, 0.1, 0.0));
  }
  {
    FormSpec spec;
    spec.problem = Problem::Hardy1D;
    spec.beta = -3.0;
    const auto eig = max_generalized_eig(assemble_forms(spec, graded_log_breaks(1e-3, 1e3, 65, 8, 0.25), 5));
    const RowContext ctx{"hardy1d_eig", 1, 2, -3, 0, 1e3, seed};
    rows.push_back(exploratory_row(ctx, "ratio_over_sharp", eig.value));
    rows.push_back(checked_row(ctx, "shortfall_below_0.95", 0.95 - eig.value, 0.0, 0.0));
    rows.push_back(checked_row(ctx, "ratio_over_sharp_excess", eig.value, 1.0, 1e-8));
  }

  const int n_cor = cfg.verify_1d.corollary_profiles;
  const double alphas[] = {-1.0, 0.0, 1.0};
  for (int j = 0; j < n_cor && j < static_cast<int>(signed_profiles.size()) && !interrupted(); ++j) {
    for (int n = 0; n <= 3; ++n)
      for (int k = 0; n + k + 1 <= kMaxDerivative; ++k)
        for (double p : exponents)
          for (double alpha : alphas) {
            if (!(p * n > alpha)) continue;
            const auto c = corollary22_check(signed_profiles[j], n, k, p, alpha);
            const RowContext ctx{"iterated_T_n" + std::to_string(n) + "_k" + std::to_string(k), 1, p, alpha, 0,
                                 0.0, static_cast<std::uint64_t>(j)};
            rows.push_back(checked_row(ctx, "ratio", c.bound.ratio, 1.0, 1e-8));
            rows.push_back(checked_row(ctx, "route_discrepancy", c.route_discrepancy, 1e-8, 0.0));
          }
  }
  log << "verify-1d: " << rows.size() << " rows\n";
}

// ------------------------------------------------------------ verify-decomp

struct FdResult {
  double grad_error = 0.0;  // max |fd - decomposition| / max decomposition
  double lap_error = 0.0;
};

// Central differences of u and u/|x| at random points inside the support.
FdResult fd_compare(const TestField& field, int points, double h, std::uint64_t seed) {
  Rng rng(seed);
  const int N = field.dim();
  const auto& prof = field.profile();
  double g_err = 0.0, g_scale = 0.0, l_err = 0.0, l_scale = 0.0;
  std::vector<double> x(N);
  for (int k = 0; k < points; ++k) {
    const double r = prof.r_min() * std::pow(prof.r_max() / prof.r_min(), rng.uniform(0.1, 0.9));
    double norm = 0.0;
    for (auto& v : x) {
      v = rng.uniform(-1.0, 1.0);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : x) v *= r / norm;
    const auto q = [&](const std::vector<double>& y) {
      double rr = 0.0;
      for (double v : y) rr += v * v;
      return field.value_at(y) / std::sqrt(rr);
    };
    double grad2 = 0.0, lap = 0.0;
    const double u0 = field.value_at(x);
    for (int i = 0; i < N; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double d = (q(xp) - q(xm)) / (2.0 * h);
      grad2 += d * d;
      lap += (field.value_at(xp) - 2.0 * u0 + field.value_at(xm)) / (h * h);
    }
    double angle = 0.0;
    if (N == 2) angle = std::atan2(x[1], x[0]);
    if (N == 3) angle = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
    const auto s = polar_sample(field, r, angle);
    g_err = std::max(g_err, std::abs(grad2 - s.grad_quotient_sq));
    g_scale = std::max(g_scale, s.grad_quotient_sq);
    l_err = std::max(l_err, std::abs(lap - s.laplacian));
    l_scale = std::max(l_scale, std::abs(s.laplacian));
  }
  return {g_scale > 0 ? g_err / g_scale : g_err, l_scale > 0 ? l_err / l_scale : l_err};
}

double max_slot_gap(const FunctionalReport& a, const FunctionalReport& b) {
  const double pa[] = {a.lhs_grad_quotient, a.rhs_lap, a.rhs_hess_exact, a.rhs_surrogate,
                       a.radial_part, a.angular_part, a.radial_second};
  const double pb[] = {b.lhs_grad_quotient, b.rhs_lap, b.rhs_hess_exact, b.rhs_surrogate,
                       b.radial_part, b.angular_part, b.radial_second};
  double worst = 0.0;
  for (int k = 0; k < 7; ++k) {
    const double scale = std::max(std::abs(pa[k]), std::abs(pb[k]));
    if (scale > 0.0) worst = std::max(worst, std::abs(pa[k] - pb[k]) / scale);
  }
  return worst;
}

void verify_decomp(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto seed = child_seed(cfg.seed, "verify-decomp");
  const auto& vd = cfg.verify_decomp;
  std::vector<TestField> fields;
  const int per = std::max(1, vd.fields / 4);
  for (int N : {2, 3}) {
    auto f = generate(base_corpus(cfg, child_seed(seed, "separable" + std::to_string(N)),
                                  Family::RandomSeparable, {N, 2.0, 0.0}, per));
    fields.insert(fields.end(), f.begin(), f.end());
  }
  for (int N : {2, 3, 4, 5}) {
    auto f = generate(base_corpus(cfg, child_seed(seed, "radial" + std::to_string(N)), Family::RandomRadial,
                                  {N, 2.0, 0.0}, std::max(1, per / 2)));
    fields.insert(fields.end(), f.begin(), f.end());
  }

  for (std::size_t k = 0; k < fields.size() && !interrupted(); ++k) {
    const auto& field = fields[k];
    const RowContext ctx{"decomp", field.dim(), 2.0, 0.0, field.mode().ell(), 0.0, k};
    const auto fd = fd_compare(field, vd.fd_points, vd.fd_step, child_seed(seed, k));
    rows.push_back(checked_row(ctx, "fd_grad_quotient_rel_error", fd.grad_error, 1e-5, 0.0));
    rows.push_back(checked_row(ctx, "fd_laplacian_rel_error", fd.lap_error, 1e-6, 0.0));

    const auto rep = evaluate_report(field);
    rows.push_back(checked_row(ctx, "bochner_rel_gap", std::abs(rep.rhs_hess_exact - rep.rhs_lap) / rep.rhs_lap,
                               1e-7, 0.0));
    rows.push_back(checked_row(ctx, "parallel_vs_serial", max_slot_gap(rep, evaluate_reference(field)), 1e-10, 0.0));

    // Pointwise surrogate dominance on a small grid.
    int violations = 0;
    const auto& prof = field.profile();
    for (int i = 1; i < 20; ++i) {
      const double r = prof.r_min() + (prof.r_max() - prof.r_min()) * i / 20.0;
      for (int j = 0; j < 16; ++j) {
        const double angle = field.dim() == 2 ? 2.0 * std::numbers::pi * j / 16 : std::numbers::pi * (j + 0.5) / 16;
        const auto s = polar_sample(field, r, angle);
        const double tol = 1e-12 * (s.surrogate_sq + 1e-300);
        if (s.surrogate_sq + tol < s.urr * s.urr) ++violations;
        if (s.surrogate_sq + tol < 2.0 * s.mixed_surrogate * s.mixed_surrogate) ++violations;
      }
    }
    rows.push_back(checked_row(ctx, "surrogate_dominance_violations", violations, 0.0, 0.0));

    if (field.kind() == FieldKind::Radial) {
      const auto f3 = field.with_params({field.dim(), 3.0, 0.5});
      const auto lhs = lhs_functional(f3).lhs;
      const auto rule = default_rule(prof);
      const auto T = apply_T({1.0, 2.0, 1.0, 0.0}, spline_derivative(prof, 2), rule);
      std::vector<double> samples(rule.size());
      for (std::size_t i = 0; i < rule.size(); ++i) samples[i] = std::pow(std::abs(T.values()[i]), 3.0);
      const double ref = sphere_area(field.dim()) * integrate_radial_samples(samples, field.dim() - 1.0 + 0.5, rule);
      rows.push_back(checked_row({"radial_consistency", field.dim(), 3.0, 0.5, 0, 0.0, k}, "rel_gap",
                                 std::abs(lhs - ref) / ref, 1e-8, 0.0));
    }
  }

  for (double R : {16.0, 256.0}) {
    const auto field = make_field(FieldKind::Separable, harmonic_plateau_profile(R), 1, {2, 2.0, 0.0});
    const auto rule = default_rule(field.profile());
    double worst = 0.0, scale = 0.0;
    for (double r : rule.nodes()) {
      const auto s = polar_sample(field, r, 0.3);
      scale = std::max(scale, std::abs(s.urr) + std::abs(field.profile().evaluate(r, 1)) / r);
      if (r > 1.0 && r < R) worst = std::max(worst, std::abs(s.laplacian));
    }
    rows.push_back(checked_row({"plateau_harmonic", 2, 2.0, 0.0, 1, R, 0}, "max_laplacian_over_scale",
                               worst / scale, 1e-10, 0.0));
  }

  for (int N = 2; N <= 6; ++N)
    rows.push_back(checked_row({"convexity", N, static_cast<double>(N), 0.0, 0, 0.0, seed}, "max_violation",
                               convexity_check(N, 10000, child_seed(seed, N)), 1e-12, 0.0));
  log << "verify-decomp: " << rows.size() << " rows\n";
}

// ---------------------------------------------------------------- constants

void constants(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  log << std::left << std::setw(20) << "constant" << std::setw(4) << "N" << "value\n";
  const auto emit = [&](const CatalogEntry& e) {
    rows.push_back(exploratory_row({"catalog_" + e.name, e.dim, e.p, 0.0, 0, 0.0, 0}, "value", e.value));
    log << std::setw(20) << e.name << std::setw(4) << e.dim << std::setprecision(10) << e.value << "\n";
  };
  for (int N = cfg.constants.dim_min; N <= cfg.constants.dim_max; ++N) {
    if (N != 2) emit(catalog("hardy", N, 2.0));
    if (N >= 5) emit(catalog("rellich", N, 2.0));
    if (N >= 3) emit(catalog("hardy_rellich_p2", N, 2.0));
  }
  log << "tracked constant 2^{N/2-1}(1/(1-a) + (N/(N-a))^N):\n";
  for (int N = 1; N <= 6; ++N)
    for (double a : {-1.0, 0.0, 0.5}) {
      const double c = tracked_constant(N, a);
      rows.push_back(exploratory_row({"tracked_constant", N, static_cast<double>(N), a, 0, 0.0, 0}, "value", c));
      log << "  N=" << N << " a=" << a << " -> " << c << "\n";
    }
  for (int N = 1; N <= 4; ++N)
    for (double a : {-3.0, -1.0, 0.0, 0.5, 1.9})
      for (double q : {1.5, 2.0}) {
        const auto w = weight_class_check(N, a, q);
        const RowContext ctx{"weight_class_q" + std::to_string(q).substr(0, 3), N, q, a, 0, 0.0, 0};
        rows.push_back(exploratory_row(ctx, "in_Aq", w.in_Aq ? 1.0 : 0.0));
        rows.push_back(exploratory_row(ctx, "in_A_infinity", w.in_A_infinity ? 1.0 : 0.0));
      }
}

// ----------------------------------------------------------------- quotient

struct SharpCase {
  Problem problem;
  const char* catalog_name;
  int dim;
  double tolerance;
};
constexpr SharpCase kSharpCases[] = {
    {Problem::Hardy, "hardy", 3, 0.03},
    {Problem::Rellich, "rellich", 5, 0.05},
    {Problem::HardyRellich, "hardy_rellich_p2", 5, 0.05},
    {Problem::HardyRellich, "hardy_rellich_p2", 4, 0.05},
    {Problem::HardyRellich, "hardy_rellich_p2", 3, 0.05},
};

void quotient(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto& q = cfg.quotient;
  SharpOptions narrow{q.r_min, q.r_max, q.basis, 5, q.max_ell};
  SharpOptions wide{q.wide_r_min, q.wide_r_max, q.wide_basis, 5, q.max_ell};
  for (const auto& c : kSharpCases) {
    if (interrupted()) return;
    const double sharp = catalog(c.catalog_name, c.dim, 2.0).value;
    const std::string id = std::string("sharp_") + problem_name(c.problem);
    const auto res = reproduce_sharp(c.problem, c.dim, narrow);
    const RowContext ctx{id, c.dim, 2.0, 0.0, res.best.ell, q.r_max, 0};
    rows.push_back(checked_row(ctx, "relative_shortfall", (sharp - res.best.value) / sharp, c.tolerance, 0.0));
    rows.push_back(checked_row(ctx, "value_over_sharp", res.best.value / sharp, 1.0, 1e-3));
    rows.push_back(checked_row(ctx, "eig_residual", res.best.residual, 1e-8, 0.0));
    for (const auto& m : res.per_mode)
      rows.push_back(exploratory_row({id, c.dim, 2.0, 0.0, m.ell, q.r_max, 0}, "mode_value", m.value));
    log << id << " N=" << c.dim << ": " << res.best.value << " (sharp " << sharp << ", ell " << res.best.ell
        << ")\n";

    const auto w = reproduce_sharp(c.problem, c.dim, wide);
    const RowContext wctx{id + "_wide", c.dim, 2.0, 0.0, w.best.ell, q.wide_r_max, 0};
    rows.push_back(exploratory_row(wctx, "value", w.best.value));
    rows.push_back(exploratory_row(wctx, "relative_shortfall", (sharp - w.best.value) / sharp));
    rows.push_back(checked_row(wctx, "value_over_sharp", w.best.value / sharp, 1.0, 1e-3));
  }

  const auto seed = child_seed(cfg.seed, "quotient");
  const auto pn = [&](PNProblem problem, int N, double a, int ell) {
    PNOptions o;
    o.starts = q.starts;
    o.budget = q.budget;
    o.knots = q.pn_knots;
    o.ell = ell;
    o.seed = child_seed(seed, std::string(pn_problem_name(problem)) + std::to_string(N));
    return maximize_ratio_pN(problem, {N, static_cast<double>(N), a}, o);
  };
  for (int N : {1, 2, 3}) {
    if (interrupted()) return;
    const auto rep = pn(PNProblem::ThmVsSurrogate, N, 0.0, N == 1 ? 0 : 1);
    const RowContext ctx{"pN_thm_vs_surrogate", N, static_cast<double>(N), 0.0, rep.ell, 0.0, seed};
    rows.push_back(checked_row(ctx, "best_ratio", rep.value, *rep.tracked_bound, 1e-6));
    rows.push_back(exploratory_row(ctx, "evaluations", rep.iterations));
    log << "pN surrogate N=" << N << ": " << rep.value << " <= " << *rep.tracked_bound << "\n";
  }
  for (PNProblem problem : {PNProblem::ThmVsLap, PNProblem::ThmVsHessExact})
    for (int N : {2, 3}) {
      if (interrupted()) return;
      const auto rep = pn(problem, N, 0.0, 1);
      const RowContext ctx{std::string("pN_") + pn_problem_name(problem), N, static_cast<double>(N), 0.0,
                           rep.ell, 0.0, seed};
      rows.push_back(exploratory_row(ctx, "best_ratio", rep.value));
      rows.push_back(exploratory_row(ctx, "evaluations", rep.iterations));
      const auto grid = power_of_two_grid(cfg.degeneracy.log2_r_min, cfg.degeneracy.log2_r_max);
      for (const auto& pt : plateau_ratio_series(problem, N, grid))
        rows.push_back(exploratory_row({std::string("plateau_") + pn_problem_name(problem), N,
                                        static_cast<double>(N), 0.0, 1, pt.R, 0},
                                       "ratio", pt.ratio));
    }
}

// --------------------------------------------------------------- degeneracy

void degeneracy(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto& d = cfg.degeneracy;
  const auto grid = power_of_two_grid(d.log2_r_min, d.log2_r_max);
  const auto s1 = rellich_degeneracy(grid, 1, d.ramp_factor);
  int bad_steps = 0;
  for (std::size_t k = 0; k < s1.points.size(); ++k) {
    const auto& pt = s1.points[k];
    rows.push_back(exploratory_row({"degeneracy_ell1", 2, 2.0, 0.0, 1, pt.R, 0}, "quotient", pt.quotient));
    if (k > 0 && !(pt.quotient < s1.points[k - 1].quotient)) ++bad_steps;
    log << "R=" << pt.R << " ell=1 quotient " << pt.quotient << "\n";
  }
  const RowContext ctx{"degeneracy_ell1", 2, 2.0, 0.0, 1, grid.back(), 0};
  rows.push_back(checked_row(ctx, "nondecreasing_steps", bad_steps, 0.0, 0.0));
  rows.push_back(checked_row(ctx, "final_quotient", s1.points.back().quotient, 0.1, 0.0));

  const auto s0 = rellich_degeneracy(grid, 0, d.ramp_factor);
  for (const auto& pt : s0.points)
    rows.push_back(exploratory_row({"degeneracy_ell0", 2, 2.0, 0.0, 0, pt.R, 0}, "quotient", pt.quotient));
  const RowContext c0{"degeneracy_ell0", 2, 2.0, 0.0, 0, grid.back(), 0};
  rows.push_back(exploratory_row(c0, "floor", s0.floor));
  rows.push_back(checked_row(c0, "floor_reciprocal", 1.0 / s0.floor, 1.0 / 0.05, 0.0));
  log << "radial floor " << s0.floor << "\n";

  // The literal harmonic-plateau family (linear cutoffs) for comparison.
  for (double R : grid) {
    const auto b = remark_blowup_report(R);
    rows.push_back(exploratory_row({"degeneracy_harmonic_plateau", 2, 2.0, 0.0, 1, R, 0}, "quotient",
                                   b.lap_term / b.rellich_term));
  }
}

// ------------------------------------------------------------------- stress

void stress(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto grid = power_of_two_grid(cfg.degeneracy.log2_r_min, cfg.degeneracy.log2_r_max);
  std::vector<BlowupReport> reps;
  for (double R : grid) {
    if (interrupted()) return;
    const auto b = remark_blowup_report(R);
    reps.push_back(b);
    const RowContext ctx{"plateau_blowup", 2, 2.0, 0.0, 1, R, 0};
    rows.push_back(exploratory_row(ctx, "hardy_term", b.hardy_term));
    rows.push_back(exploratory_row(ctx, "rellich_term", b.rellich_term));
    rows.push_back(exploratory_row(ctx, "lap_term", b.lap_term));
    rows.push_back(exploratory_row(ctx, "grad_quotient", b.grad_quotient));
    rows.push_back(checked_row(ctx, "identity_residual", b.identity_residual, 1e-8, 0.0));
    log << "R=" << R << " hardy " << b.hardy_term << " rellich " << b.rellich_term << " lap " << b.lap_term
        << "\n";
  }
  const RowContext ctx{"plateau_blowup", 2, 2.0, 0.0, 1, grid.back(), 0};
  const double hg = reps.back().hardy_term / reps.front().hardy_term;
  const double rg = reps.back().rellich_term / reps.front().rellich_term;
  rows.push_back(exploratory_row(ctx, "hardy_growth", hg));
  rows.push_back(exploratory_row(ctx, "rellich_growth", rg));
  rows.push_back(checked_row(ctx, "hardy_growth_reciprocal", 1.0 / hg, 1.0 / 3.0, 0.0));
  rows.push_back(checked_row(ctx, "rellich_growth_reciprocal", 1.0 / rg, 1.0 / 3.0, 0.0));
  std::vector<double> laps;
  for (const auto& b : reps) laps.push_back(b.lap_term);
  std::sort(laps.begin(), laps.end());
  const double median = laps.size() % 2 ? laps[laps.size() / 2]
                                        : 0.5 * (laps[laps.size() / 2 - 1] + laps[laps.size() / 2]);
  const double spread = std::max(laps.back() / median, median / laps.front());
  rows.push_back(checked_row(ctx, "lap_spread_over_median", spread, 2.0, 0.0));
}

// -------------------------------------------------------------------- sweep

struct SweepItem {
  std::string family;
  std::vector<TestField> fields;
  double a;
  bool radial_chain;
};

void sweep(const RunConfig& cfg, Rows& rows, std::ostream& log) {
  const auto seed = child_seed(cfg.seed, "sweep");
  const auto& s = cfg.sweep;
  std::vector<SweepItem> items;
  const auto grid = power_of_two_grid(cfg.degeneracy.log2_r_min, std::min(cfg.degeneracy.log2_r_max, 8));
  for (int N : s.dims) {
    const SpaceParams params{N, static_cast<double>(N), 0.0};
    std::vector<std::pair<std::string, std::vector<TestField>>> families;
    families.emplace_back("random_radial", generate(base_corpus(cfg, child_seed(seed, "rr" + std::to_string(N)),
                                                                Family::RandomRadial, params, s.fields_per_family)));
    families.emplace_back("random_separable",
                          generate(base_corpus(cfg, child_seed(seed, "rs" + std::to_string(N)),
                                               Family::RandomSeparable, params, s.fields_per_family)));
    auto plateau = base_corpus(cfg, 0, Family::HarmonicPlateau, params, 1);
    plateau.plateau_R = grid;
    families.emplace_back("harmonic_plateau", generate(plateau));
    auto degen = plateau;
    degen.family = Family::RellichDegeneracy;
    families.emplace_back("rellich_degeneracy", generate(degen));
    auto near = base_corpus(cfg, 0, Family::NearExtremalHardy, params, 1);
    near.r_min = 1e-3;
    near.r_max = 1e3;
    families.emplace_back("near_extremal_hardy", generate(near));
    for (double a : s.weights)
      for (const auto& [name, fields] : families) items.push_back({name, fields, a, false});
  }
  for (int N = 1; N <= s.radial_dim_max; ++N) {
    const auto fields = generate(base_corpus(cfg, child_seed(seed, "radial" + std::to_string(N)),
                                             Family::RandomRadial, {N, static_cast<double>(N), 0.0},
                                             s.fields_per_family));
    for (double a : s.weights) items.push_back({"radial_chain", fields, a, true});
  }

  std::vector<Rows> buffers(items.size());
  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    if (interrupted()) continue;
    const auto& item = items[i];
    for (std::size_t k = 0; k < item.fields.size(); ++k) {
      const auto& field = item.fields[k];
      const RowContext ctx{"chain_" + item.family, field.dim(), static_cast<double>(field.dim()), item.a,
                           field.mode().ell(), 0.0, k};
      const auto c = item.radial_chain ? radial_chain_check(field, item.a) : surrogate_chain_check(field, item.a);
      buffers[i].push_back(checked_row(ctx, item.radial_chain ? "lhs_over_radial_bound" : "lhs_over_tracked_bound",
                                       c.ratio, 1.0, 1e-6));
    }
  }
  for (auto& b : buffers) rows.insert(rows.end(), b.begin(), b.end());
  std::map<std::string, double> worst;
  for (const auto& r : rows) worst[r.experiment] = std::max(worst[r.experiment], r.value);
  for (const auto& [name, v] : worst) {
    rows.push_back(exploratory_row({name, 0, 0, 0, 0, 0, seed}, "max_ratio", v));
    log << name << ": max ratio " << v << "\n";
  }
}

// ------------------------------------------------------------------- report

void report(const RunConfig&, const RunOptions& options, Rows& rows, std::ostream& log) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(options.out_dir))
    for (const auto& e : fs::directory_iterator(options.out_dir)) {
      const auto stem = e.path().stem().string();
      const auto ext = e.path().extension().string();
      if ((ext == ".csv" || ext == ".json") && stem != "report") files.push_back(e.path());
    }
  std::sort(files.begin(), files.end());
  struct Tally {
    int pass = 0, fail = 0, exploratory = 0;
    std::map<std::string, double> max_value;
  };
  std::map<std::string, Tally> tally;
  for (const auto& path : files) {
    for (const auto& r : load_rows(path.string())) {
      auto& t = tally[path.stem().string() + "/" + r.experiment];
      if (r.flag == Flag::Pass) ++t.pass;
      if (r.flag == Flag::Fail) ++t.fail;
      if (r.flag == Flag::Exploratory) ++t.exploratory;
      auto it = t.max_value.find(r.metric);
      if (it == t.max_value.end()) t.max_value[r.metric] = r.value;
      else it->second = std::max(it->second, r.value);
    }
  }
  log << std::left << std::setw(48) << "experiment" << std::setw(8) << "pass" << std::setw(8) << "fail"
      << "exploratory\n";
  for (const auto& [name, t] : tally) {
    log << std::setw(48) << name << std::setw(8) << t.pass << std::setw(8) << t.fail << t.exploratory << "\n";
    const RowContext ctx{name, 0, 0, 0, 0, 0, 0};
    rows.push_back(exploratory_row(ctx, "pass_count", t.pass));
    rows.push_back(checked_row(ctx, "fail_count", t.fail, 0.0, 0.0));
    for (const auto& [metric, v] : t.max_value) rows.push_back(exploratory_row(ctx, "max_" + metric, v));
  }
  if (files.empty()) log << "report: no result files in " << options.out_dir << "\n";
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"verify-1d", "verify-decomp", "constants", "quotient",
                                                 "degeneracy", "stress",       "sweep",     "report"};
  return names;
}

void request_interrupt() { g_interrupt.store(true, std::memory_order_relaxed); }
bool interrupted() { return g_interrupt.load(std::memory_order_relaxed); }
void clear_interrupt() { g_interrupt.store(false, std::memory_order_relaxed); }

std::vector<ReportRow> generate_rows(const std::string& subcommand, const RunConfig& config,
                                     const RunOptions& options, std::ostream& log) {
  Rows rows;
  if (subcommand == "verify-1d") verify_1d(config, rows, log);
  else if (subcommand == "verify-decomp") verify_decomp(config, rows, log);
  else if (subcommand == "constants") constants(config, rows, log);
  else if (subcommand == "quotient") quotient(config, rows, log);
  else if (subcommand == "degeneracy") degeneracy(config, rows, log);
  else if (subcommand == "stress") stress(config, rows, log);
  else if (subcommand == "sweep") sweep(config, rows, log);
  else if (subcommand == "report") report(config, options, rows, log);
  else throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
  return rows;
}

int run(const std::string& subcommand, const RunConfig& config, const RunOptions& options,
        std::ostream& log) {
  if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end()) {
    log << "error: unknown subcommand '" << subcommand << "'\n";
    return 2;
  }
  if (options.jobs > 0) omp_set_num_threads(options.jobs);
  const auto start = std::chrono::steady_clock::now();
  Rows rows;
  int status = 0;
  try {
    rows = generate_rows(subcommand, config, options, log);
  } catch (const std::exception& e) {
    log << "error: " << subcommand << ": " << e.what() << "\n";
    status = 2;
  }

  RunMetadata meta;
  meta.config_hash = config_hash(config);
  meta.seed = config.seed;
  meta.version = kVersion;
  meta.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string path = (std::filesystem::path(options.out_dir) /
                            (subcommand + (options.format == Format::Csv ? ".csv" : ".json")))
                               .string();
  try {
    std::filesystem::create_directories(options.out_dir);
    persist(rows, path, options.format, meta);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }

  int pass = 0, fail = 0, expl = 0;
  for (const auto& r : rows) {
    if (r.flag == Flag::Pass) ++pass;
    if (r.flag == Flag::Fail) ++fail;
    if (r.flag == Flag::Exploratory) ++expl;
  }
  log << subcommand << ": " << rows.size() << " rows (" << pass << " pass, " << fail << " fail, " << expl
      << " exploratory) -> " << path << "\n";
  if (interrupted()) return 130;
  if (status != 0) return status;
  return fail > 0 ? 1 : 0;
}

}  // namespace hrl::cli
