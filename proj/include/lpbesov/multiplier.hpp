#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpbesov/jet.hpp"

namespace lpbesov {

/// Highest derivative order the norm machinery will request.
inline constexpr int kMaxDerivativeOrder = 12;

/// A spectral multiplier m: [0, inf) -> R, carried as a jet-valued map so
/// every derivative up to kMaxDerivativeOrder is exact to rounding.
class Multiplier {
 public:
  using JetFn = std::function<Jet(const Jet&)>;

  Multiplier(std::string name, JetFn fn,
             std::optional<std::pair<double, double>> support = std::nullopt);

  double operator()(double lambda) const;
  /// r-th derivative at lambda, 0 <= r <= kMaxDerivativeOrder.
  double derivative(int r, double lambda) const;
  Jet eval_jet(const Jet& x) const;

  const std::string& name() const { return name_; }
  const std::optional<std::pair<double, double>>& support_hint() const {
    return support_;
  }

  /// lambda -> m(t * lambda); support hint rescales by 1/t.
  Multiplier scaled(double t) const;

  static Multiplier one();
  static Multiplier cutoff_phi();
  static Multiplier psi();
  static Multiplier tilde_phi();
  static Multiplier tilde_psi();
  static Multiplier heat();
  static Multiplier heat_power(double m);
  /// Parses "phi", "psi", "tilde_phi", "tilde_psi", "heat", "heat_power(m)".
  static Multiplier from_name(const std::string& text);

 private:
  std::string name_;
  JetFn fn_;
  std::optional<std::pair<double, double>> support_;
};

/// psi(lambda) = phi(lambda / 4) - phi(lambda), supported in [1/4, 4].
Multiplier psi_from_phi(const Multiplier& phi);
Multiplier product(const Multiplier& a, const Multiplier& b);
Multiplier difference(const Multiplier& a, const Multiplier& b);

struct MultiplierNorm {
  double value = 0.0;
  int arg_derivative = 0;    // r achieving the sup
  double arg_lambda = 0.0;   // lambda achieving the sup
  double boundary_low = 0.0;   // objective at the low grid end, max over r
  double boundary_high = 0.0;  // objective at the high grid end
};

/// sup over 0 <= r <= n and lambda in [1e-8, 1e8] of (1+lambda)^n |m^(r)(lambda)|,
/// evaluated on a log grid then sharpened by golden-section search.
MultiplierNorm multiplier_norm(const Multiplier& m, int n,
                               int grid_points = 4000,
                               double lambda_lo = 1e-8,
                               double lambda_hi = 1e8);

/// Scale-invariant companion: sup of lambda^r |m^(r)(lambda)| over the same range.
MultiplierNorm scale_invariant_norm(const Multiplier& m, int n,
                                    int grid_points = 4000,
                                    double lambda_lo = 1e-8,
                                    double lambda_hi = 1e8);

/// Max over the grid of |phi(l) + sum_{j=0..N} psi(4^-j l) - phi(4^-(N+1) l)|.
double telescope_check(int N, const std::vector<double>& grid);

std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace lpbesov
