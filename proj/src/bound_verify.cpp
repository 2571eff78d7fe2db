#include "simplexcover/bound_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include <gsl/gsl_integration.h>
#include <omp.h>

#include "simplexcover/errors.hpp"
#include "simplexcover/parallel.hpp"

namespace simplexcover {

const char* to_string(IntegrationMethod method) {
  return method == IntegrationMethod::monte_carlo ? "monte_carlo" : "nested_quadrature";
}

NotchConfig NotchConfig::make(double d_star, double v) {
  if (!(d_star > 0)) throw std::invalid_argument("d* must be positive");
  if (v < 0 || v > d_star / 4) throw std::invalid_argument("notch coordinate must lie in [0, d*/4]");
  return NotchConfig{d_star, v};
}

bool in_region_no_notch(const std::array<double, 3>& x, double d_star) {
  if (x[0] < 0 || x[1] < 0 || x[2] < 0) return false;
  const double s = x[0] + x[1] + x[2];
  if (s > d_star) return false;
  return d_star - s <= std::min({x[0], x[1], x[2]});
}

bool in_region_notch(const std::array<double, 3>& x, const NotchConfig& config) {
  return in_region_no_notch(x, config.d_star) && config.d_star - (x[0] + x[1] + x[2]) <= config.v;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

constexpr std::uint64_t kTaskSamples = 1u << 15;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

Moments pairwise_sum(std::span<const Moments> parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts.front();
  const std::size_t half = parts.size() / 2;
  const Moments a = pairwise_sum(parts.first(half));
  const Moments b = pairwise_sum(parts.subspan(half));
  return {a.sum + b.sum, a.sum_sq + b.sum_sq};
}

Moments run_task(int dim, double side, const SimplexIntegrand& f, std::uint64_t seed, std::uint64_t task,
                 std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<double, 4> u{};
  std::array<double, 4> x{};
  const std::span<const double> point(x.data(), static_cast<std::size_t>(dim));
  Moments m;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (int k = 0; k < dim; ++k) u[static_cast<std::size_t>(k)] = uniform(rng);
    std::sort(u.begin(), u.begin() + dim);
    double prev = 0.0;
    for (int k = 0; k < dim; ++k) {
      x[static_cast<std::size_t>(k)] = (u[static_cast<std::size_t>(k)] - prev) * side;
      prev = u[static_cast<std::size_t>(k)];
    }
    const double y = f(point);
    m.sum += y;
    m.sum_sq += y * y;
  }
  return m;
}

double simplex_volume(int dim, double side) {
  double v = 1.0;
  for (int k = 1; k <= dim; ++k) v *= side / k;
  return v;
}

IntegralEstimate finish(int dim, double side, std::span<const Moments> parts, std::uint64_t samples,
                        std::uint64_t seed) {
  const Moments total = pairwise_sum(parts);
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = samples > 1 ? std::max(0.0, (total.sum_sq - total.sum * mean) / (n - 1.0)) : 0.0;
  const double vol = simplex_volume(dim, side);
  return IntegralEstimate{vol * mean, vol * std::sqrt(var / n), samples, IntegrationMethod::monte_carlo, seed};
}

void check_mc_args(int dim, std::uint64_t samples) {
  if (samples == 0) throw BadSampleCount();
  if (dim < 1 || dim > 4) throw std::invalid_argument("Monte Carlo dimension must be 1..4");
}

std::uint64_t task_count(std::uint64_t samples) { return (samples + kTaskSamples - 1) / kTaskSamples; }

std::uint64_t task_size(std::uint64_t samples, std::uint64_t task) {
  return std::min(kTaskSamples, samples - task * kTaskSamples);
}

}  // namespace

IntegralEstimate simplex_monte_carlo_serial(int dim, double side, const SimplexIntegrand& f, std::uint64_t samples,
                                            std::uint64_t seed) {
  check_mc_args(dim, samples);
  std::vector<Moments> parts(task_count(samples));
  for (std::uint64_t t = 0; t < parts.size(); ++t) parts[t] = run_task(dim, side, f, seed, t, task_size(samples, t));
  return finish(dim, side, parts, samples, seed);
}

IntegralEstimate simplex_monte_carlo(int dim, double side, const SimplexIntegrand& f, std::uint64_t samples,
                                     std::uint64_t seed, int threads) {
  check_mc_args(dim, samples);
  std::vector<Moments> parts(task_count(samples));
  const auto tasks = static_cast<std::int64_t>(parts.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (std::int64_t t = 0; t < tasks; ++t) {
    const auto task = static_cast<std::uint64_t>(t);
    parts[task] = run_task(dim, side, f, seed, task, task_size(samples, task));
  }
  return finish(dim, side, parts, samples, seed);
}

// ---------------------------------------------------------------------------
// Nested Gauss-Legendre quadrature over the explicit iterated-integral pieces

namespace {

// One iterated integral: outer variable a in [a0, a1], middle b in
// [b0(a), b1(a)], inner x3 in [c0(a,b), c1(a,b)]. When `outer_is_x2` the
// outer variable is x2 and the middle one is x1.
struct Piece {
  double a0, a1;
  std::function<double(double)> b0, b1;
  std::function<double(double, double)> c0, c1;
  bool outer_is_x2 = false;
};

class GaussLegendre {
 public:
  explicit GaussLegendre(int nodes) : x_(static_cast<std::size_t>(nodes)), w_(static_cast<std::size_t>(nodes)) {
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes)), &gsl_integration_glfixed_table_free);
    if (!table) throw std::runtime_error("Gauss-Legendre table allocation failed");
    for (std::size_t i = 0; i < x_.size(); ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &x_[i], &w_[i], table.get());
  }
  std::size_t size() const { return x_.size(); }
  // Node i mapped to [lo, hi] and its scaled weight.
  double node(std::size_t i, double lo, double hi) const { return 0.5 * (hi - lo) * x_[i] + 0.5 * (hi + lo); }
  double weight(std::size_t i, double lo, double hi) const { return 0.5 * (hi - lo) * w_[i]; }

 private:
  std::vector<double> x_, w_;
};

double integrate_pieces(const std::vector<Piece>& pieces, double d, int nodes, int threads) {
  const GaussLegendre gl(nodes);
  const auto n = static_cast<std::int64_t>(gl.size());
  double total = 0.0;
  for (const auto& piece : pieces) {
    std::vector<double> outer(gl.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (std::int64_t i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const double a = gl.node(ii, piece.a0, piece.a1);
      const double b0 = piece.b0(a), b1 = piece.b1(a);
      double middle = 0.0;
      for (std::size_t j = 0; j < gl.size(); ++j) {
        const double b = gl.node(j, b0, b1);
        const double x1 = piece.outer_is_x2 ? b : a;
        const double x2 = piece.outer_is_x2 ? a : b;
        const double c0 = piece.c0(x1, x2), c1 = piece.c1(x1, x2);
        double inner = 0.0;
        for (std::size_t k = 0; k < gl.size(); ++k) inner += gl.weight(k, c0, c1) * (d - x1 - x2 - gl.node(k, c0, c1));
        middle += gl.weight(j, b0, b1) * inner;
      }
      outer[ii] = gl.weight(ii, piece.a0, piece.a1) * middle;
    }
    for (double part : outer) total += part;
  }
  return total;
}

std::vector<Piece> no_notch_pieces(double d) {
  auto half = [d](double x1, double x2) { return 0.5 * (d - x1 - x2); };
  auto top = [d](double x1, double x2) { return d - x1 - x2; };
  return {
      {0, d / 4, [d](double x1) { return d - 3 * x1; }, [d](double x1) { return d - x1; }, half, top},
      {d / 4, d, [d](double x1) { return (d - x1) / 3; }, [d](double x1) { return d - x1; }, half, top},
      {0, d / 4, [](double x1) { return x1; }, [d](double x1) { return d - 3 * x1; },
       [d](double x1, double x2) { return d - 2 * x1 - x2; }, top},
      {0, d / 4, [](double x2) { return x2; }, [d](double x2) { return d - 3 * x2; },
       [d](double x1, double x2) { return d - x1 - 2 * x2; }, top, true},
  };
}

std::vector<Piece> notch_pieces(double d, double v) {
  auto half = [d](double x1, double x2) { return 0.5 * (d - x1 - x2); };
  auto top = [d](double x1, double x2) { return d - x1 - x2; };
  return {
      {0, v, [d](double x1) { return d - 3 * x1; }, [d](double x1) { return d - x1; }, half, top},
      {v, d - 3 * v, [d, v](double x1) { return d - x1 - 2 * v; }, [d](double x1) { return d - x1; }, half, top},
      {d - 3 * v, d, [d](double x1) { return (d - x1) / 3; }, [d](double x1) { return d - x1; }, half, top},
      {v, d - 3 * v, [v](double) { return v; }, [d, v](double x1) { return d - x1 - 2 * v; },
       [d, v](double x1, double x2) { return d - x1 - x2 - v; }, top},
      {0, v, [](double x1) { return x1; }, [d](double x1) { return d - 3 * x1; },
       [d](double x1, double x2) { return d - 2 * x1 - x2; }, top},
      {0, v, [](double x2) { return x2; }, [d](double x2) { return d - 3 * x2; },
       [d](double x1, double x2) { return d - x1 - 2 * x2; }, top, true},
  };
}

IntegralEstimate quadrature(const std::vector<Piece>& pieces, double d, const IntegrationOptions& options) {
  if (options.nodes < 1) throw BadSampleCount();
  const auto per_piece = static_cast<std::uint64_t>(options.nodes) * static_cast<std::uint64_t>(options.nodes) *
                         static_cast<std::uint64_t>(options.nodes);
  return IntegralEstimate{integrate_pieces(pieces, d, options.nodes, options.threads), 0.0, per_piece * pieces.size(),
                          IntegrationMethod::nested_quadrature, options.seed};
}

}  // namespace

IntegralEstimate integral_no_notch(double d_star, const IntegrationOptions& options) {
  if (d_star < 0) throw std::invalid_argument("d* must be nonnegative");
  if (options.method == IntegrationMethod::nested_quadrature) return quadrature(no_notch_pieces(d_star), d_star, options);
  const auto integrand = [d_star](std::span<const double> x) {
    const std::array<double, 3> p{x[0], x[1], x[2]};
    return in_region_no_notch(p, d_star) ? d_star - p[0] - p[1] - p[2] : 0.0;
  };
  return simplex_monte_carlo(3, d_star, integrand, options.samples, options.seed, options.threads);
}

IntegralEstimate integral_notch(const NotchConfig& config, const IntegrationOptions& options) {
  const auto c = NotchConfig::make(config.d_star, config.v);
  if (options.method == IntegrationMethod::nested_quadrature) return quadrature(notch_pieces(c.d_star, c.v), c.d_star, options);
  const auto integrand = [c](std::span<const double> x) {
    const std::array<double, 3> p{x[0], x[1], x[2]};
    return in_region_notch(p, c) ? c.d_star - p[0] - p[1] - p[2] : 0.0;
  };
  return simplex_monte_carlo(3, c.d_star, integrand, options.samples, options.seed, options.threads);
}

double notch_region_volume(const NotchConfig& config) {
  const auto c = NotchConfig::make(config.d_star, config.v);
  return std::pow(c.d_star - 4 * c.v, 4) / 24.0;
}

IntegralEstimate notch_region_volume_mc(const NotchConfig& config, const IntegrationOptions& options) {
  const auto c = NotchConfig::make(config.d_star, config.v);
  // For fixed (p1, p2) the admissible (p3, p4) form a right triangle with
  // legs d* - p1 - p2 - 2v.
  const auto fibre_area = [c](std::span<const double> p) {
    if (p[0] < c.v || p[1] < c.v) return 0.0;
    const double leg = c.d_star - p[0] - p[1] - 2 * c.v;
    return leg > 0 ? 0.5 * leg * leg : 0.0;
  };
  return simplex_monte_carlo(2, c.d_star, fibre_area, options.samples, options.seed, options.threads);
}

// ---------------------------------------------------------------------------
// Exact closed forms

Rational no_notch_integral_exact(const Rational& d_star) { return pow(d_star, 4) / 384; }

Rational notch_integral_exact(const Rational& d, const Rational& v) {
  return 2 * pow(v, 4) - Rational(4) * d / 3 * pow(v, 3) + pow(d, 2) / 4 * pow(v, 2);
}

Rational notch_region_volume_exact(const Rational& d, const Rational& v) { return pow(d - 4 * v, 4) / 24; }

Rational notch_volume_bound(const Rational& d, const Rational& v) {
  return Rational(-56, 3) * pow(v, 4) + 16 * d * pow(v, 3) - 5 * pow(d, 2) * pow(v, 2) + Rational(2, 3) * pow(d, 3) * v;
}

double notch_volume_bound(double d, double v) {
  return -56.0 / 3.0 * std::pow(v, 4) + 16 * d * std::pow(v, 3) - 5 * d * d * v * v + 2.0 / 3.0 * d * d * d * v;
}

Rational notch_bound_identity_residual(const Rational& d, const Rational& v) {
  return (pow(d, 4) / 24 - 4 * notch_integral_exact(d, v) - notch_region_volume_exact(d, v)) - notch_volume_bound(d, v);
}

double notch_bound_identity_residual(double d, double v) {
  const double integral = 2 * std::pow(v, 4) - 4 * d / 3 * std::pow(v, 3) + d * d / 4 * v * v;
  return (std::pow(d, 4) / 24 - 4 * integral - std::pow(d - 4 * v, 4) / 24) - notch_volume_bound(d, v);
}

Rational derivative_factorization_residual(const Rational& d, const Rational& v) {
  const Rational derivative =
      Rational(-224, 3) * pow(v, 3) + 48 * d * pow(v, 2) - 10 * pow(d, 2) * v + Rational(2, 3) * pow(d, 3);
  return derivative - Rational(-224, 3) * pow(v - d / 4, 2) * (v - d / 7);
}

double derivative_factorization_residual(double d, double v) {
  const double derivative = -224.0 / 3.0 * v * v * v + 48 * d * v * v - 10 * d * d * v + 2.0 / 3.0 * d * d * d;
  return derivative - (-224.0 / 3.0) * (v - d / 4) * (v - d / 4) * (v - d / 7);
}

NotchOptimum optimize_notch(const Rational& d_star, int grid_points) {
  if (d_star <= 0) throw std::invalid_argument("d* must be positive");
  if (grid_points < 2) throw BadSampleCount();
  NotchOptimum opt;
  // Critical points from the factored derivative: a simple root at d*/7 and
  // a double root at d*/4.
  opt.v_max = d_star / 7;
  opt.max_value = notch_volume_bound(d_star, opt.v_max);
  opt.v_local_min = d_star / 4;
  opt.local_min_value = notch_volume_bound(d_star, opt.v_local_min);

  const double d = to_double(d_star);
  opt.grid_max = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_points; ++k) {
    const double v = d / 4 * k / (grid_points - 1);
    const double value = notch_volume_bound(d, v);
    if (value > opt.grid_max) {
      opt.grid_max = value;
      opt.grid_argmax = v;
    }
  }
  return opt;
}

Rational no_notch_volume_bound(const Rational& d_star) {
  return pow(d_star, 4) / 24 - 4 * no_notch_integral_exact(d_star);
}

Rational order_bound_4d(std::int64_t d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  const Rational d_star = d + 4;
  return std::max(no_notch_volume_bound(d_star), optimize_notch(d_star, 2).max_value);
}

// ---------------------------------------------------------------------------
// Check suite

bool monte_carlo_pass(double estimate, double closed_form, double std_err) {
  const double abs_err = std::fabs(estimate - closed_form);
  if (abs_err == 0.0) return true;
  const double rel_err = closed_form != 0.0 ? abs_err / std::fabs(closed_form) : abs_err;
  return rel_err <= kMonteCarloRelTol && abs_err <= kMonteCarloSigmas * std_err;
}

namespace {

BoundCheck make_check(std::string name, double estimate, double closed_form, double std_err) {
  BoundCheck c;
  c.name = std::move(name);
  c.estimate = estimate;
  c.closed_form = closed_form;
  c.abs_err = std::fabs(estimate - closed_form);
  c.rel_err = closed_form != 0.0 ? c.abs_err / std::fabs(closed_form) : c.abs_err;
  c.std_err = std_err;
  return c;
}

BoundCheck numeric_check(std::string name, const IntegralEstimate& est, double closed_form) {
  BoundCheck c = make_check(std::move(name), est.value, closed_form, est.std_error);
  c.pass = est.method == IntegrationMethod::monte_carlo ? monte_carlo_pass(est.value, closed_form, est.std_error)
                                                        : c.rel_err <= kQuadratureRelTol || c.abs_err == 0.0;
  return c;
}

BoundCheck exact_check(std::string name, const Rational& value, const Rational& expected) {
  BoundCheck c = make_check(std::move(name), to_double(value), to_double(expected), 0.0);
  c.pass = value == expected;
  return c;
}

}  // namespace

std::vector<BoundCheck> run_bound_checks(const BoundCheckConfig& config) {
  const Rational& d = config.d_star;
  if (d <= 0) throw std::invalid_argument("d* must be positive");
  std::vector<Rational> vs = config.v_values;
  if (vs.empty()) vs = {d / 8, d / 7, d / 4};
  const double dd = to_double(d);
  const auto& opts = config.integration;

  std::vector<BoundCheck> checks;
  const auto no_notch = integral_no_notch(dd, opts);
  checks.push_back(numeric_check("integral_no_notch", no_notch, to_double(no_notch_integral_exact(d))));

  // d*^4/24 - 4 * (numeric integral) against d*^4/32.
  IntegralEstimate bound_est = no_notch;
  bound_est.value = std::pow(dd, 4) / 24 - 4 * no_notch.value;
  bound_est.std_error = 4 * no_notch.std_error;
  checks.push_back(numeric_check("no_notch_volume_bound", bound_est, to_double(no_notch_volume_bound(d))));

  for (const auto& v : vs) {
    const std::string tag = "[v=" + to_string(v) + "]";
    const auto config_v = NotchConfig::make(dd, to_double(v));
    checks.push_back(numeric_check("integral_notch" + tag, integral_notch(config_v, opts),
                                   to_double(notch_integral_exact(d, v))));
    checks.push_back(numeric_check("notch_region_volume" + tag, notch_region_volume_mc(config_v, opts),
                                   to_double(notch_region_volume_exact(d, v))));
    checks.push_back(exact_check("notch_bound_identity" + tag, notch_bound_identity_residual(d, v), 0));
    checks.push_back(exact_check("derivative_factorization" + tag, derivative_factorization_residual(d, v), 0));
  }

  const auto opt = optimize_notch(d);
  const Rational expected_max = Rational(11) * pow(d, 4) / 343;
  BoundCheck max_check = make_check("notch_maximum", opt.grid_max, to_double(expected_max), 0.0);
  max_check.pass = opt.max_value == expected_max && opt.v_max == d / 7 && opt.grid_max <= to_double(expected_max) + kGridTol;
  checks.push_back(max_check);
  checks.push_back(exact_check("notch_local_minimum", opt.local_min_value, pow(d, 4) / 32));
  checks.push_back(exact_check("tile_volume_bound", std::max(no_notch_volume_bound(d), opt.max_value), expected_max));
  return checks;
}

}  // namespace simplexcover
