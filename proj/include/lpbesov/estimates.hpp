#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpbesov/filter_bank.hpp"
#include "lpbesov/group.hpp"

namespace lpbesov {

/// One measured inequality instance. envelope is the right-hand side with its
/// constant set to 1, so ratio = measured / envelope is the constant this row
/// demands.
struct EstimateRow {
  double t = 0.0;
  int alpha = 0;
  std::vector<int> word;
  double p = 1.0;
  int j = -1;  // dyadic scale when applicable
  double measured = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

struct EstimateReport {
  std::string name;
  int norm_order = 0;  // regularity order n used for the multiplier norm
  std::vector<EstimateRow> rows;
  double fitted_constant = 0.0;  // max over rows of ratio
  int degenerate_rows = 0;       // rows whose envelope vanished
  bool pass = false;             // fitted_constant finite and no degenerate rows
};

/// lp norm of x -> (1 + |x|)^alpha (X^I K)(x), I given as generator indices.
double weighted_kernel_norm(const GroupSignal& K, const WordMetric& metric, int alpha,
                            const std::vector<int>& word, double p);

/// sup_x (1 + |x|)^alpha |X^I f(x)|, the decay-and-smoothness seminorm.
double schwartz_seminorm(const GroupSignal& f, const WordMetric& metric, int alpha,
                         const std::vector<int>& word);

struct KernelSweep {
  std::vector<double> t = {0.0625, 0.25, 1.0};
  std::vector<int> alpha = {0, 2};
  std::vector<std::vector<int>> words = {{}, {0}};
  std::vector<double> p = {1.0, 2.0, kInfinity};
};

/// Weighted kernel norms of m(tL) measured against the dimensional envelopes
///   (1 + sqrt t)^alpha V(sqrt t)^(-1/p') ||m||_(n)              underived rows, t > 0
///   t^(-(d/(2p') + |I|/2)) ||m||_(n)                            derivative rows, 0 < t <= 1
/// with d the fitted local dimension. Derivative rows with t > 1 are skipped.
EstimateReport check_kernel_estimates(const SpectralEngine& engine, const Multiplier& m,
                                      int norm_order, const KernelSweep& sweep,
                                      const WordMetric& metric, const GrowthProfile& growth,
                                      ApplyMethod method = ApplyMethod::kAuto);

struct GaussianFitRow {
  double t = 0.0;
  double constant = 0.0;  // smallest feasible C
};

struct GaussianFit {
  std::vector<int> word;
  std::vector<GaussianFitRow> rows;
  double span = 0.0;  // max constant / min constant over the sweep
};

/// Per t, the smallest C with |X^I p_t(x)| <= C * P(t) * exp(-|x|^2 / (C t))
/// over |x| <= r_max/2, where P(t) = V(sqrt t)^(-1) for the plain kernel and
/// t^(-(d+|I|)/2) for derivative words. Kernel values at spectral roundoff
/// level are indistinguishable from zero and are excluded from the fit.
GaussianFit check_gaussian_bound(const SpectralEngine& engine, const WordMetric& metric,
                                 const GrowthProfile& growth, const std::vector<double>& t_sweep,
                                 const std::vector<int>& word = {},
                                 ApplyMethod method = ApplyMethod::kAuto);

enum class BlockKind { kBand, kLow };  // Delta_j or S_j

/// ||X^I (sqrt L)^sigma B_j u||_q / (2^(j(|I| + sigma + d(1/p - 1/q))) ||B_j u||_p)
/// with B_j the chosen block operator and d the fitted local dimension.
/// Requires p <= q; sigma >= 0 for the low-pass variant. Returns nullopt when
/// ||B_j u||_p < 1e-13 (the ratio is undefined there).
std::optional<double> bernstein_ratio(const FilterBank& bank, const GroupSignal& u,
                                      const std::vector<int>& word, double sigma, double p,
                                      double q, int j, double d_loc,
                                      BlockKind kind = BlockKind::kBand);

struct BernsteinRow {
  int j = 0;
  double ratio = 0.0;
};

struct BernsteinTrend {
  std::vector<int> word;
  double sigma = 0.0;
  double p = 1.0;
  double q = 1.0;
  std::vector<BernsteinRow> rows;  // band rows j = 0..J, undefined rows absent
  double log10_slope = 0.0;        // least-squares slope of log10(ratio) vs j
};

/// Band-block ratios across all scales plus the trend statistic. Low-pass
/// rows are excluded from the fit: past the saturation scale S_j u = u, so
/// their ratio decays by construction and would fake a trend.
BernsteinTrend bernstein_trend(const FilterBank& bank, const GroupSignal& u,
                               const std::vector<int>& word, double sigma, double p,
                               double q, double d_loc);

struct DecayProfileRow {
  int alpha = 0;
  double seminorm = 0.0;
};

/// Schwartz seminorms of K over a list of weights alpha (fixed word I).
std::vector<DecayProfileRow> schwartz_decay_profile(const GroupSignal& K,
                                                    const WordMetric& metric,
                                                    const std::vector<int>& alphas,
                                                    const std::vector<int>& word = {});

/// Seminorm sequence p_{alpha,I}(f - S_j f) for j = 0..J+1; the final entry
/// sits at the saturation scale where S_j = identity.
std::vector<double> sj_convergence_check(const FilterBank& bank, const GroupSignal& f,
                                         int alpha, const std::vector<int>& word);

struct BlockProfile {
  std::vector<double> l1_norms;   // ||kernel(Delta_j)||_1, j = 0..J
  double max_over_median = 0.0;
};

/// l1 norms of the band kernels; flat profiles certify the scale-uniform
/// kernel bound.
BlockProfile block_l1_profile(const FilterBank& bank);

}  // namespace lpbesov
