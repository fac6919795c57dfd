#include "lpbesov/multiplier.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpbesov {
namespace {

// theta(x) = exp(-1/x) for x > 0, identically 0 for x <= 0. Below 1e-20 the
// true value underflows and intermediate 1/x powers could overflow, so the
// jet is returned as exactly zero there.
Jet theta_jet(const Jet& x) {
  if (x.value() <= 1e-20) return Jet(x.order());
  return exp(-(Jet::constant(1.0, x.order()) / x));
}

// phi is 1 on (0, 1/4], 0 on [1, inf), and theta(1-l)/(theta(1-l)+theta(l-1/4))
// between. The branch on the jet value is exact: phi is flat on both tails.
Jet phi_jet(const Jet& x) {
  const double v = x.value();
  if (v <= 0.25) return Jet::constant(1.0, x.order());
  if (v >= 1.0) return Jet(x.order());
  Jet a = theta_jet(1.0 - x);
  Jet b = theta_jet(x - 0.25);
  return a / (a + b);
}

Jet heat_jet(const Jet& x) { return exp(-x); }

// lambda^(m/2) * exp(-lambda). Even m uses repeated multiplication so the
// jet is exact at lambda = 0 as well; fractional m falls back to pow and
// reports only the continuous-extension value at 0.
Jet heat_power_jet(const Jet& x, double m) {
  const int half = static_cast<int>(std::lround(m / 2.0));
  if (std::abs(m / 2.0 - half) < 1e-15 && half >= 0) {
    Jet p = Jet::constant(1.0, x.order());
    for (int i = 0; i < half; ++i) p = p * x;
    return p * heat_jet(x);
  }
  if (x.value() == 0.0) return Jet(x.order());
  return pow(x, m / 2.0) * heat_jet(x);
}

std::string scaled_name(const std::string& base, double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(scale=%g)", t);
  return base + buf;
}

}  // namespace

Multiplier::Multiplier(std::string name, JetFn fn,
                       std::optional<std::pair<double, double>> support)
    : name_(std::move(name)), fn_(std::move(fn)), support_(support) {}

double Multiplier::operator()(double lambda) const {
  if (lambda < 0.0) throw std::domain_error("multiplier evaluated at lambda < 0");
  return fn_(Jet::variable(lambda, 0)).value();
}

double Multiplier::derivative(int r, double lambda) const {
  if (r < 0 || r > kMaxDerivativeOrder)
    throw std::invalid_argument("derivative order out of range");
  if (lambda < 0.0) throw std::domain_error("multiplier evaluated at lambda < 0");
  return fn_(Jet::variable(lambda, r)).derivative(r);
}

Jet Multiplier::eval_jet(const Jet& x) const { return fn_(x); }

Multiplier Multiplier::scaled(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::optional<std::pair<double, double>> supp;
  if (support_) supp = std::make_pair(support_->first / t, support_->second / t);
  JetFn inner = fn_;
  return Multiplier(scaled_name(name_, t),
                    [inner, t](const Jet& x) { return inner(x * t); }, supp);
}

Multiplier Multiplier::one() {
  return Multiplier("one", [](const Jet& x) { return Jet::constant(1.0, x.order()); });
}

Multiplier Multiplier::cutoff_phi() {
  return Multiplier("phi", [](const Jet& x) { return phi_jet(x); },
                    std::make_pair(0.0, 1.0));
}

Multiplier Multiplier::psi() {
  Multiplier p = psi_from_phi(cutoff_phi());
  return Multiplier("psi", [p](const Jet& x) { return p.eval_jet(x); },
                    std::make_pair(0.25, 4.0));
}

Multiplier Multiplier::tilde_phi() {
  return Multiplier("tilde_phi", [](const Jet& x) { return phi_jet(x * 0.25); },
                    std::make_pair(0.0, 4.0));
}

Multiplier Multiplier::tilde_psi() {
  return Multiplier("tilde_psi",
                    [](const Jet& x) {
                      return phi_jet(x * (1.0 / 16.0)) - phi_jet(x * 4.0);
                    },
                    std::make_pair(1.0 / 16.0, 16.0));
}

Multiplier Multiplier::heat() {
  return Multiplier("heat", [](const Jet& x) { return heat_jet(x); });
}

Multiplier Multiplier::heat_power(double m) {
  if (m < 0.0) throw std::invalid_argument("heat_power order must be >= 0");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "heat_power(%g)", m);
  return Multiplier(buf, [m](const Jet& x) { return heat_power_jet(x, m); });
}

Multiplier Multiplier::from_name(const std::string& text) {
  if (text == "phi") return cutoff_phi();
  if (text == "psi") return psi();
  if (text == "tilde_phi") return tilde_phi();
  if (text == "tilde_psi") return tilde_psi();
  if (text == "heat") return heat();
  if (text == "one") return one();
  if (text.rfind("heat_power(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(11, text.size() - 12);
    size_t used = 0;
    double m = std::stod(inner, &used);
    if (used != inner.size()) throw std::invalid_argument("bad heat_power argument: " + text);
    return heat_power(m);
  }
  throw std::invalid_argument(
      "unknown multiplier '" + text +
      "'; expected phi, psi, tilde_phi, tilde_psi, heat, heat_power(m) or one");
}

Multiplier psi_from_phi(const Multiplier& phi) {
  return Multiplier("psi_from_" + phi.name(),
                    [phi](const Jet& x) {
                      return phi.eval_jet(x * 0.25) - phi.eval_jet(x);
                    },
                    std::make_pair(0.25, 4.0));
}

Multiplier product(const Multiplier& a, const Multiplier& b) {
  std::optional<std::pair<double, double>> supp;
  if (a.support_hint() && b.support_hint()) {
    supp = std::make_pair(std::max(a.support_hint()->first, b.support_hint()->first),
                          std::min(a.support_hint()->second, b.support_hint()->second));
  } else if (a.support_hint()) {
    supp = a.support_hint();
  } else if (b.support_hint()) {
    supp = b.support_hint();
  }
  return Multiplier(a.name() + "*" + b.name(),
                    [a, b](const Jet& x) { return a.eval_jet(x) * b.eval_jet(x); },
                    supp);
}

Multiplier difference(const Multiplier& a, const Multiplier& b) {
  std::optional<std::pair<double, double>> supp;
  if (a.support_hint() && b.support_hint()) {
    supp = std::make_pair(std::min(a.support_hint()->first, b.support_hint()->first),
                          std::max(a.support_hint()->second, b.support_hint()->second));
  }
  return Multiplier(a.name() + "-" + b.name(),
                    [a, b](const Jet& x) { return a.eval_jet(x) - b.eval_jet(x); },
                    supp);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_grid needs 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = std::exp(std::log(lo) + i * step);
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

// Shared sweep for both norm flavours. weight(r, lambda) selects the flavour.
template <typename Weight>
MultiplierNorm norm_sweep(const Multiplier& m, int n, int grid_points,
                          double lambda_lo, double lambda_hi, Weight weight) {
  if (n < 0 || n > kMaxDerivativeOrder)
    throw std::invalid_argument("multiplier norm order out of range");
  const std::vector<double> grid = log_grid(lambda_lo, lambda_hi, grid_points);

  MultiplierNorm out;
  int best_idx = 0;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    const double l = grid[i];
    Jet j = m.eval_jet(Jet::variable(l, n));
    double fact = 1.0;
    double here = 0.0;
    int here_r = 0;
    for (int r = 0; r <= n; ++r) {
      if (r >= 2) fact *= r;
      const double g = weight(r, l) * std::abs(j.coeff(r) * fact);
      if (g > here) {
        here = g;
        here_r = r;
      }
    }
    if (i == 0) out.boundary_low = here;
    if (i + 1 == static_cast<int>(grid.size())) out.boundary_high = here;
    if (here > out.value) {
      out.value = here;
      out.arg_derivative = here_r;
      out.arg_lambda = l;
      best_idx = i;
    }
  }

  // Golden-section sharpening in log-lambda around the winning grid cell,
  // holding r fixed at the grid argmax.
  const int r0 = out.arg_derivative;
  auto objective = [&](double l) {
    return weight(r0, l) * std::abs(m.derivative(r0, l));
  };
  double a = std::log(grid[std::max(0, best_idx - 1)]);
  double b = std::log(grid[std::min<int>(grid.size() - 1, best_idx + 1)]);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(std::exp(x1)), f2 = objective(std::exp(x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(std::exp(x1));
    }
  }
  const double refined_l = std::exp(0.5 * (a + b));
  const double refined = objective(refined_l);
  if (refined > out.value) {
    out.value = refined;
    out.arg_lambda = refined_l;
  }
  return out;
}

}  // namespace

MultiplierNorm multiplier_norm(const Multiplier& m, int n, int grid_points,
                               double lambda_lo, double lambda_hi) {
  return norm_sweep(m, n, grid_points, lambda_lo, lambda_hi,
                    [n](int, double l) { return std::pow(1.0 + l, n); });
}

MultiplierNorm scale_invariant_norm(const Multiplier& m, int n, int grid_points,
                                    double lambda_lo, double lambda_hi) {
  return norm_sweep(m, n, grid_points, lambda_lo, lambda_hi,
                    [](int r, double l) { return std::pow(l, r); });
}

double telescope_check(int N, const std::vector<double>& grid) {
  if (N < 0) throw std::invalid_argument("telescope_check needs N >= 0");
  const Multiplier phi = Multiplier::cutoff_phi();
  const Multiplier psi = Multiplier::psi();
  double worst = 0.0;
  for (double l : grid) {
    double acc = phi(l);
    double scale = 1.0;
    for (int j = 0; j <= N; ++j) {
      acc += psi(scale * l);
      scale *= 0.25;
    }
    // scale is now 4^-(N+1)
    worst = std::max(worst, std::abs(acc - phi(scale * l)));
  }
  return worst;
}

}  // namespace lpbesov
