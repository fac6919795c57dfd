#include "lpbesov/besov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpbesov {

namespace {

std::string fmt_exponent(double v) {
  if (v == kInfinity) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

bool valid_exponent(double v) { return v == kInfinity || v >= 1.0; }

}  // namespace

std::string BesovParams::label() const {
  return "s=" + fmt_exponent(s) + ",p=" + fmt_exponent(p) + ",q=" + fmt_exponent(q) +
         ",m=" + fmt_exponent(m);
}

void BesovParams::validate() const {
  if (!valid_exponent(p)) throw std::invalid_argument("p must be in [1, inf]");
  if (!valid_exponent(q)) throw std::invalid_argument("q must be in [1, inf]");
  if (m < 0.0) throw std::invalid_argument("heat power order m must be >= 0");
  if (!(m > s)) throw std::invalid_argument("heat characterization requires m > s");
}

double besov_dyadic_norm(const Decomposition& dec, const BesovParams& prm) {
  prm.validate();
  const double base = lp_norm(dec.s0, prm.p);
  if (prm.q == kInfinity) {
    double sup = 0.0;
    for (size_t j = 0; j < dec.blocks.size(); ++j) {
      sup = std::max(sup, std::exp2(static_cast<double>(j) * prm.s) *
                              lp_norm(dec.blocks[j], prm.p));
    }
    return base + sup;
  }
  double acc = 0.0;
  for (size_t j = 0; j < dec.blocks.size(); ++j) {
    const double term =
        std::exp2(static_cast<double>(j) * prm.s) * lp_norm(dec.blocks[j], prm.p);
    acc += std::pow(term, prm.q);
  }
  return base + std::pow(acc, 1.0 / prm.q);
}

double besov_dyadic_norm(const FilterBank& bank, const GroupSignal& u,
                         const BesovParams& prm) {
  return besov_dyadic_norm(decompose(bank, u), prm);
}

std::vector<double> default_heat_grid(int J) {
  if (J < 0) throw std::invalid_argument("top scale must be >= 0");
  std::vector<double> grid;
  for (int i = 0; i <= 2 * (J + 1); ++i) grid.push_back(std::exp2(-i));
  return grid;
}

double besov_heat_norm(const SpectralEngine& engine, const GroupSignal& u,
                       const BesovParams& prm, const std::vector<double>& t_grid,
                       ApplyMethod method) {
  prm.validate();
  if (t_grid.empty()) throw std::invalid_argument("heat grid is empty");
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());
  if (grid.front() <= 0.0) throw std::invalid_argument("heat grid times must be positive");

  const Multiplier power = Multiplier::heat_power(prm.m);
  const double base =
      lp_norm(apply_multiplier(engine, Multiplier::heat(), 1.0, u, method).signal, prm.p);

  // F(t) = t^{-s/2} ||(tL)^{m/2} e^{-tL} u||_p on the grid.
  std::vector<double> F(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double norm = lp_norm(apply_multiplier(engine, power, t, u, method).signal, prm.p);
    F[i] = std::pow(t, -0.5 * prm.s) * norm;
  }

  if (prm.q == kInfinity) {
    return base + *std::max_element(F.begin(), F.end());
  }

  // Trapezoid in x = log t of F^q, plus the analytic (0, t_min) tail: below
  // the spectral saturation scale the integrand is t^{gamma q - 1} times an
  // essentially frozen factor A = ||L^{m/2} e^{-(t_min/2) L} u||_p.
  double acc = 0.0;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dx = std::log(grid[i + 1]) - std::log(grid[i]);
    acc += 0.5 * (std::pow(F[i], prm.q) + std::pow(F[i + 1], prm.q)) * dx;
  }
  const double t_min = grid.front();
  const double gamma = 0.5 * (prm.m - prm.s);
  const double a_norm =
      std::pow(0.5 * t_min, -0.5 * prm.m) *
      lp_norm(apply_multiplier(engine, power, 0.5 * t_min, u, method).signal, prm.p);
  acc += std::pow(a_norm, prm.q) * std::pow(t_min, gamma * prm.q) / (gamma * prm.q);
  return base + std::pow(acc, 1.0 / prm.q);
}

std::vector<BesovComparison> besov_equivalence_report(
    const FilterBank& bank, const SpectralEngine& engine,
    const std::vector<GroupSignal>& ensemble, const std::vector<BesovParams>& params_list,
    ApplyMethod method) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  if (params_list.empty()) throw std::invalid_argument("empty parameter list");
  for (const BesovParams& prm : params_list) prm.validate();

  std::vector<Decomposition> decs;
  decs.reserve(ensemble.size());
  for (const GroupSignal& u : ensemble) decs.push_back(decompose(bank, u));
  const std::vector<double> grid = default_heat_grid(bank.top_scale());

  std::vector<BesovComparison> report;
  for (const BesovParams& prm : params_list) {
    BesovComparison cmp;
    cmp.params = prm;
    for (size_t i = 0; i < ensemble.size(); ++i) {
      const double dyadic = besov_dyadic_norm(decs[i], prm);
      const double heat = besov_heat_norm(engine, ensemble[i], prm, grid, method);
      if (heat <= 0.0) continue;  // zero signal
      cmp.rows.push_back(BesovRatioRow{static_cast<int>(i), dyadic, heat, dyadic / heat});
    }
    if (cmp.rows.empty()) throw std::invalid_argument("ensemble contains only zero signals");
    auto [lo, hi] = std::minmax_element(
        cmp.rows.begin(), cmp.rows.end(),
        [](const BesovRatioRow& a, const BesovRatioRow& b) { return a.ratio < b.ratio; });
    cmp.min_ratio = lo->ratio;
    cmp.max_ratio = hi->ratio;
    cmp.spread = cmp.min_ratio > 0.0 ? cmp.max_ratio / cmp.min_ratio : kInfinity;
    report.push_back(std::move(cmp));
  }
  return report;
}

}  // namespace lpbesov
