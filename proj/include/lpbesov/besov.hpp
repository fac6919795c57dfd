#pragma once

#include <string>
#include <vector>

#include "lpbesov/filter_bank.hpp"

namespace lpbesov {

struct BesovParams {
  double s = 0.0;               // smoothness
  double p = 2.0;               // may be kInfinity
  double q = 2.0;               // may be kInfinity
  double m = 2.0;               // heat power order, must exceed s
  std::string label() const;
  /// Throws with the offending condition; the heat characterization needs
  /// m > s and exponents in [1, inf].
  void validate() const;
};

/// ||S0 u||_p + (sum_j (2^{js} ||Delta_j u||_p)^q)^{1/q}; sup over j at q = inf.
double besov_dyadic_norm(const Decomposition& dec, const BesovParams& prm);
double besov_dyadic_norm(const FilterBank& bank, const GroupSignal& u,
                         const BesovParams& prm);

/// t_i = 2^{-i} for i = 0..2(J+1); descending from 1 to the spectral
/// saturation scale.
std::vector<double> default_heat_grid(int J);

/// ||e^{-L}u||_p plus the trapezoid-in-log-t quadrature of
/// (t^{-s/2} ||(tL)^{m/2} e^{-tL} u||_p)^q dt/t over the grid, with an
/// analytic correction for the (0, t_min) tail; sup over the grid at q = inf.
double besov_heat_norm(const SpectralEngine& engine, const GroupSignal& u,
                       const BesovParams& prm, const std::vector<double>& t_grid,
                       ApplyMethod method = ApplyMethod::kAuto);

struct BesovRatioRow {
  int signal_index = 0;
  double dyadic = 0.0;
  double heat = 0.0;
  double ratio = 0.0;  // dyadic / heat
};

struct BesovComparison {
  BesovParams params;
  std::vector<BesovRatioRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max / min
};

/// One comparison per parameter set; signals with zero norm are skipped.
std::vector<BesovComparison> besov_equivalence_report(
    const FilterBank& bank, const SpectralEngine& engine,
    const std::vector<GroupSignal>& ensemble, const std::vector<BesovParams>& params_list,
    ApplyMethod method = ApplyMethod::kAuto);

}  // namespace lpbesov
