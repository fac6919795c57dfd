#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lpbesov/calculus.hpp"

namespace lpbesov {

/// Smallest J with 2^(2(J+1)) > 4 * lambda_max. The strict inequality keeps a
/// saturation margin: phi(2^(-2(J+1)) lambda) = 1 across the whole spectrum.
int saturation_scale(double lambda_max);

/// The dyadic bank S_j = phi(2^(-2j) L), Delta_j = psi(2^(-2j) L), j = 0..J.
/// Chebyshev-path filters are built once per scale and cached.
class FilterBank {
 public:
  FilterBank(const SpectralEngine& engine, ApplyMethod method = ApplyMethod::kAuto,
             double tolerance = 1e-8, int max_degree = 2000);

  const SpectralEngine& engine() const { return *engine_; }
  const CayleyGroup& group() const { return engine_->group(); }
  int top_scale() const { return J_; }
  ApplyMethod method() const { return method_; }
  double tolerance() const { return tolerance_; }
  /// Reconstruction error budget: per-application certified error times the
  /// number of summed pieces.
  double error_budget() const;

  double scale(int j) const;  // t_j = 2^(-2j)

  GroupSignal apply_s(int j, const GroupSignal& u) const;
  GroupSignal apply_delta(int j, const GroupSignal& u) const;  // 0 <= j <= J

 private:
  const ChebyshevFilter& cached_filter(const Multiplier& m, int j,
                                       std::map<int, std::unique_ptr<ChebyshevFilter>>& cache) const;

  const SpectralEngine* engine_;
  int J_;
  ApplyMethod method_;  // resolved: exact or chebyshev
  double tolerance_;
  int max_degree_;
  Multiplier phi_;
  Multiplier psi_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<ChebyshevFilter>> s_cache_;
  mutable std::map<int, std::unique_ptr<ChebyshevFilter>> delta_cache_;
};

struct Decomposition {
  GroupSignal s0;
  std::vector<GroupSignal> blocks;  // Delta_j u, j = 0..J
  double reconstruction_error = 0.0;  // ||u - s0 - sum blocks||_2 / ||u||_2
};

Decomposition decompose(const FilterBank& bank, const GroupSignal& u);

/// g(x) = (sum_j |Delta_j u(x)|^2)^(1/2).
GroupSignal square_function(const Decomposition& dec);

struct LpStats {
  double p = 2.0;
  std::vector<double> ratios;  // r(u) = (||S0 u||_p + ||g(u)||_p) / ||u||_p
  double empirical_cp = 0.0;   // max over u of max(r, 1/r)
};

/// Signals with ||u||_p = 0 are skipped; throws if the ensemble is empty.
LpStats lp_equivalence_stats(const FilterBank& bank,
                             const std::vector<GroupSignal>& ensemble, double p);

}  // namespace lpbesov
