#include "hrl/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrl/quadrature.hpp"

namespace hrl {

const char* problem_name(Problem problem) {
  switch (problem) {
    case Problem::Hardy: return "hardy";
    case Problem::Rellich: return "rellich";
    case Problem::HardyRellich: return "hardy_rellich";
    case Problem::GradQuotientVsLap: return "grad_quotient_vs_lap";
    case Problem::GradQuotientVsSurrogate: return "grad_quotient_vs_surrogate";
    case Problem::Hardy1D: return "hardy1d";
  }
  return "unknown";
}

AngularMoments angular_moments(int dim, int ell, int sphere_nodes) {
  if (ell == 0) return {sphere_area(dim), 0.0, 0.0};
  const AngularMode mode(ell, dim);
  const int nodes = sphere_nodes > 0 ? sphere_nodes : (dim == 2 ? 128 : 96);
  AngularMoments m;
  m.c0 = integrate_sphere([&](double t) { const double y = mode.at(t).value; return y * y; }, dim, nodes);
  m.c1 = integrate_sphere([&](double t) { return mode.at(t).grad_norm_sq(); }, dim, nodes);
  m.c2 = integrate_sphere([&](double t) { return mode.at(t).hess_norm_sq(); }, dim, nodes);
  return m;
}

namespace {

constexpr int kMaxTerms = 4;

// weight * (l0 g + l1 g' + l2 g'')^2 summed over terms.
struct Term {
  double weight, l0, l1, l2;
};
struct TermList {
  int count = 0;
  Term terms[kMaxTerms];
  void add(double w, double l0, double l1, double l2) {
    if (w != 0.0) terms[count++] = {w, l0, l1, l2};
  }
};

struct Integrand {
  FormSpec spec;
  AngularMoments m;
  double lambda;

  void laplacian(double r, TermList& out) const {
    const int N = spec.params.dim;
    const double w = m.c0 * std::pow(r, N - 1.0 + spec.params.a);
    out.add(w, -lambda / (r * r), (N - 1.0) / r, 1.0);
  }

  void fill(double r, TermList& num, TermList& den) const {
    const int N = spec.params.dim;
    const double a = spec.params.a;
    const auto rp = [&](double e) { return std::pow(r, e); };
    switch (spec.problem) {
      case Problem::Hardy:
        num.add(m.c0 * rp(N - 3.0 + a), 1, 0, 0);
        den.add(m.c0 * rp(N - 1.0 + a), 0, 1, 0);
        den.add(m.c1 * rp(N - 3.0 + a), 1, 0, 0);
        break;
      case Problem::Rellich:
        num.add(m.c0 * rp(N - 5.0 + a), 1, 0, 0);
        laplacian(r, den);
        break;
      case Problem::HardyRellich:
        num.add(m.c0 * rp(N - 3.0 + a), 0, 1, 0);
        num.add(m.c1 * rp(N - 5.0 + a), 1, 0, 0);
        laplacian(r, den);
        break;
      case Problem::GradQuotientVsLap:
      case Problem::GradQuotientVsSurrogate:
        num.add(m.c0 * rp(N - 1.0 + a), -1.0 / (r * r), 1.0 / r, 0);
        num.add(m.c1 * rp(N - 5.0 + a), 1, 0, 0);
        if (spec.problem == Problem::GradQuotientVsLap) {
          laplacian(r, den);
        } else {
          const double last = spec.variant == SurrogateVariant::InverseSquare ? N - 3.0 : N - 2.0;
          den.add(m.c0 * rp(N - 1.0 + a), 0, 0, 1);
          // 2 c1 g'^2 / r^2 and (N-1) c0 g'^2 / r^2 share one direction.
          den.add(2.0 * m.c1 * rp(N - 3.0 + a) + (N - 1.0) * m.c0 * rp(last + a), 0, 1, 0);
          den.add(m.c2 * rp(N - 5.0 + a), 1, 0, 0);
        }
        break;
      case Problem::Hardy1D:
        num.add(rp(spec.beta), 1, 0, 0);
        den.add(rp(spec.beta + 2.0), 0, 1, 0);
        break;
    }
  }
};

Integrand make_integrand(const FormSpec& spec) {
  if (spec.problem == Problem::Hardy1D) return {spec, {1.0, 0.0, 0.0}, 0.0};
  const int N = spec.params.dim;
  if (spec.ell < 0) throw std::invalid_argument("assemble_forms: ell >= 0 required");
  if (spec.ell == 0 || N == 2 || N == 3) {
    const double lambda = spec.ell == 0 ? 0.0 : AngularMode(spec.ell, N).lambda();
    return {spec, angular_moments(N, spec.ell), lambda};
  }
  // Other dimensions: a normalized degree-ell harmonic has c0 = 1 and
  // c1 = lambda; the sphere Hessian moment is not available.
  if (N < 2) throw std::invalid_argument("assemble_forms: nonradial modes need N >= 2");
  if (spec.problem == Problem::GradQuotientVsSurrogate)
    throw std::invalid_argument("assemble_forms: surrogate forms need N in {2,3} for ell > 0");
  const double lambda = spec.ell * (spec.ell + N - 2.0);
  return {spec, {1.0, lambda, 0.0}, lambda};
}

// Per-node data shared by both assembly paths.
struct NodeTerms {
  long first = 0;
  int width = 0;
  // [side][term] weight and projected local vector.
  int count[2] = {0, 0};
  double weight[2][kMaxTerms] = {};
  std::vector<double> vec;  // [side][term][local]

  const double* v(int side, int term) const { return &vec[(side * kMaxTerms + term) * width]; }
};

NodeTerms node_terms(const BSpline& carrier, const Integrand& integrand, double r, double w) {
  const auto local = carrier.local_basis(r, 2);
  NodeTerms nt;
  nt.first = local.first;
  nt.width = local.degree + 1;
  nt.vec.assign(2 * kMaxTerms * nt.width, 0.0);
  TermList lists[2];
  integrand.fill(r, lists[0], lists[1]);
  for (int side = 0; side < 2; ++side) {
    nt.count[side] = lists[side].count;
    for (int t = 0; t < lists[side].count; ++t) {
      const auto& term = lists[side].terms[t];
      nt.weight[side][t] = w * term.weight;
      double* v = &nt.vec[(side * kMaxTerms + t) * nt.width];
      for (int l = 0; l < nt.width; ++l)
        v[l] = term.l0 * local.at(0, l) + term.l1 * local.at(1, l) + term.l2 * local.at(2, l);
    }
  }
  return nt;
}

QuadraticFormPair empty_pair(const FormSpec& spec, std::vector<double> breaks, int degree) {
  const auto n = BSpline::basis_size(breaks.size(), degree);
  if (n == 0) throw std::invalid_argument("assemble_forms: empty basis");
  QuadraticFormPair pair;
  pair.numerator = Matrix(n, n);
  pair.denominator = Matrix(n, n);
  pair.spec = spec;
  pair.breaks = std::move(breaks);
  pair.degree = degree;
  return pair;
}

}  // namespace

QuadraticFormPair assemble_forms(const FormSpec& spec, std::vector<double> breaks, int degree,
                                 int order, double max_ratio) {
  auto pair = empty_pair(spec, std::move(breaks), degree);
  const auto integrand = make_integrand(spec);
  const auto carrier = BSpline::zeros(pair.breaks, degree);
  const auto rule = QuadratureRule::for_breaks(pair.breaks, order, max_ratio);
  const long nodes = static_cast<long>(rule.size());
  const long n = static_cast<long>(carrier.size());

  std::vector<NodeTerms> data(nodes);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nodes; ++i)
    data[i] = node_terms(carrier, integrand, rule.nodes()[i], rule.weights()[i]);

  std::vector<long> first(nodes);
  for (long i = 0; i < nodes; ++i) first[i] = data[i].first;

#pragma omp parallel for schedule(dynamic, 4)
  for (long row = 0; row < n; ++row) {
    const long lo = std::lower_bound(first.begin(), first.end(), row - degree) - first.begin();
    const long hi = std::upper_bound(first.begin(), first.end(), row) - first.begin();
    for (long col = row; col <= std::min(n - 1, row + degree); ++col) {
      double sums[2] = {0.0, 0.0};
      for (long i = lo; i < hi; ++i) {
        const auto& nt = data[i];
        const long li = row - nt.first, lj = col - nt.first;
        if (lj >= nt.width) continue;
        for (int side = 0; side < 2; ++side)
          for (int t = 0; t < nt.count[side]; ++t) {
            const double* v = nt.v(side, t);
            sums[side] += nt.weight[side][t] * v[li] * v[lj];
          }
      }
      pair.numerator(row, col) = pair.numerator(col, row) = sums[0];
      pair.denominator(row, col) = pair.denominator(col, row) = sums[1];
    }
  }
  return pair;
}

QuadraticFormPair assemble_forms_reference(const FormSpec& spec, std::vector<double> breaks,
                                           int degree, int order, double max_ratio) {
  auto pair = empty_pair(spec, std::move(breaks), degree);
  const auto integrand = make_integrand(spec);
  const auto carrier = BSpline::zeros(pair.breaks, degree);
  const auto rule = QuadratureRule::for_breaks(pair.breaks, order, max_ratio);
  const long n = static_cast<long>(carrier.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto nt = node_terms(carrier, integrand, rule.nodes()[i], rule.weights()[i]);
    for (int side = 0; side < 2; ++side) {
      Matrix& m = side == 0 ? pair.numerator : pair.denominator;
      for (int t = 0; t < nt.count[side]; ++t) {
        const double* v = nt.v(side, t);
        for (int l = 0; l < nt.width; ++l)
          for (int k = 0; k < nt.width; ++k) {
            const long I = nt.first + l, J = nt.first + k;
            if (I < 0 || J < 0 || I >= n || J >= n) continue;
            m(I, J) += nt.weight[side][t] * v[l] * v[k];
          }
      }
    }
  }
  return pair;
}

double form_quotient(const QuadraticFormPair& pair, std::span<const double> c) {
  const auto bc = pair.numerator.apply(c);
  const auto ac = pair.denominator.apply(c);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    num += c[i] * bc[i];
    den += c[i] * ac[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace hrl
