#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "simplexcover/rational.hpp"

namespace simplexcover {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Pass gates.
inline constexpr double kMonteCarloRelTol = 0.01;
inline constexpr double kMonteCarloSigmas = 3.0;
inline constexpr double kQuadratureRelTol = 1e-6;
inline constexpr double kGridTol = 1e-12;

enum class IntegrationMethod { monte_carlo, nested_quadrature };

const char* to_string(IntegrationMethod method);

/// Tile M-diameter d* and notch (v, v, v, v), 0 <= v <= d*/4.
struct NotchConfig {
  double d_star = 1.0;
  double v = 0.0;

  static NotchConfig make(double d_star, double v);
};

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  IntegrationMethod method = IntegrationMethod::monte_carlo;
  std::uint64_t seed = kDefaultSeed;
};

struct IntegrationOptions {
  IntegrationMethod method = IntegrationMethod::monte_carlo;
  std::uint64_t samples = 1'000'000;  // Monte Carlo
  int nodes = 256;                    // Gauss-Legendre nodes per axis
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
};

// Region predicates are closed: boundary points are members.

/// Projection onto x4 = 0 of the part of the facet {x >= 0, sum x = d*}
/// where x4 is the smallest coordinate.
bool in_region_no_notch(const std::array<double, 3>& x, double d_star);
/// The same region with the notch cone {x1, x2, x3, x4 >= v} removed,
/// i.e. additionally x4 = d* - s <= v.
bool in_region_notch(const std::array<double, 3>& x, const NotchConfig& config);

/// Integral of d* - x1 - x2 - x3 over the no-notch region; exact value d*^4/384.
IntegralEstimate integral_no_notch(double d_star, const IntegrationOptions& options = {});
/// Integral of the same integrand over the notch region; exact value
/// 2v^4 - (4d*/3)v^3 + (d*^2/4)v^2.
IntegralEstimate integral_notch(const NotchConfig& config, const IntegrationOptions& options = {});

/// Volume of {p in S(4, d*) : p >= (v,v,v,v)}, i.e. (d* - 4v)^4 / 24.
double notch_region_volume(const NotchConfig& config);
/// Monte Carlo for the same volume; samples (p1, p2) and integrates the
/// (p3, p4) fibre exactly.
IntegralEstimate notch_region_volume_mc(const NotchConfig& config, const IntegrationOptions& options = {});

Rational no_notch_integral_exact(const Rational& d_star);
Rational notch_integral_exact(const Rational& d_star, const Rational& v);
Rational notch_region_volume_exact(const Rational& d_star, const Rational& v);

/// Upper bound on the 4-D tile volume when the notch sits at (v,v,v,v):
/// -(56/3)v^4 + 16 d* v^3 - 5 d*^2 v^2 + (2 d*^3/3) v.
Rational notch_volume_bound(const Rational& d_star, const Rational& v);
double notch_volume_bound(double d_star, double v);

/// [d*^4/24 - 4 * notch integral - notch region volume] - notch_volume_bound.
Rational notch_bound_identity_residual(const Rational& d_star, const Rational& v);
double notch_bound_identity_residual(double d_star, double v);

/// d/dv notch_volume_bound - (-224/3)(v - d*/4)^2 (v - d*/7).
Rational derivative_factorization_residual(const Rational& d_star, const Rational& v);
double derivative_factorization_residual(double d_star, double v);

struct NotchOptimum {
  Rational v_max;
  Rational max_value;        // 11 d*^4 / 343
  Rational v_local_min;
  Rational local_min_value;  // d*^4 / 32
  double grid_max = 0.0;     // largest sampled bound over [0, d*/4]
  double grid_argmax = 0.0;
};

NotchOptimum optimize_notch(const Rational& d_star, int grid_points = 10'000);

/// d*^4/24 - 4 d*^4/384 = d*^4/32.
Rational no_notch_volume_bound(const Rational& d_star);
/// max(no-notch bound, notch maximum) at d* = d + 4; equals 11(d+4)^4/343.
Rational order_bound_4d(std::int64_t d);

/// Uniform Monte Carlo over the simplex {x >= 0, sum x <= side} in `dim`
/// dimensions (dim <= 4). Samples come from sorted-uniform spacings. Work is
/// cut into fixed-size tasks, each with its own generator keyed by
/// (seed, task), and partial sums are reduced pairwise, so the result does
/// not depend on the thread count.
using SimplexIntegrand = std::function<double(std::span<const double>)>;
IntegralEstimate simplex_monte_carlo(int dim, double side, const SimplexIntegrand& f, std::uint64_t samples,
                                     std::uint64_t seed, int threads = 0);
IntegralEstimate simplex_monte_carlo_serial(int dim, double side, const SimplexIntegrand& f, std::uint64_t samples,
                                            std::uint64_t seed);

struct BoundCheck {
  std::string name;
  double estimate = 0.0;
  double closed_form = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double std_err = 0.0;
  bool pass = false;

  bool operator==(const BoundCheck&) const = default;
};

struct BoundCheckConfig {
  Rational d_star = 1;
  std::vector<Rational> v_values;  // empty: d*/8, d*/7, d*/4
  IntegrationOptions integration;
};

/// Runs every numeric and exact check at one d*.
std::vector<BoundCheck> run_bound_checks(const BoundCheckConfig& config);

/// Monte Carlo gate: relative error within 1% and absolute error within
/// three standard errors (an exact hit passes both).
bool monte_carlo_pass(double estimate, double closed_form, double std_err);

}  // namespace simplexcover
