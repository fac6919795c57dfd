#include "lpbesov/filter_bank.hpp"

#include <cmath>
#include <stdexcept>

namespace lpbesov {

int saturation_scale(double lambda_max) {
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
  int J = 0;
  while (std::exp2(2.0 * (J + 1)) <= 4.0 * lambda_max) {
    ++J;
    if (J > 60) throw std::logic_error("saturation scale out of range");
  }
  return J;
}

FilterBank::FilterBank(const SpectralEngine& engine, ApplyMethod method,
                       double tolerance, int max_degree)
    : engine_(&engine),
      J_(saturation_scale(engine.laplacian().lambda_max())),
      tolerance_(tolerance),
      max_degree_(max_degree),
      phi_(Multiplier::cutoff_phi()),
      psi_(Multiplier::psi()) {
  if (method == ApplyMethod::kAuto) {
    const Eigen::Index n = engine.laplacian().matrix().rows();
    method_ = (engine.dense_available() && n <= 2048) ? ApplyMethod::kExact
                                                      : ApplyMethod::kChebyshev;
  } else {
    method_ = method;
  }
}

double FilterBank::error_budget() const {
  const double per = (method_ == ApplyMethod::kExact) ? 1e-11 : tolerance_;
  return per * (J_ + 2);
}

double FilterBank::scale(int j) const {
  if (j < 0) throw std::out_of_range("scale index must be >= 0");
  return std::exp2(-2.0 * j);
}

const ChebyshevFilter& FilterBank::cached_filter(
    const Multiplier& m, int j,
    std::map<int, std::unique_ptr<ChebyshevFilter>>& cache) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache.find(j);
  if (it == cache.end()) {
    const double t = scale(j);
    auto g = [&m, t](double lambda) { return m(t * lambda); };
    auto filter = std::make_unique<ChebyshevFilter>(
        g, engine_->laplacian().lambda_max(), tolerance_, max_degree_);
    if (!filter->tolerance_met())
      throw std::runtime_error("chebyshev degree cap reached while building the bank");
    it = cache.emplace(j, std::move(filter)).first;
  }
  return *it->second;
}

GroupSignal FilterBank::apply_s(int j, const GroupSignal& u) const {
  if (j < 0) throw std::out_of_range("scale index must be >= 0");
  if (method_ == ApplyMethod::kExact)
    return apply_multiplier(*engine_, phi_, scale(j), u, ApplyMethod::kExact).signal;
  return cached_filter(phi_, j, s_cache_).apply(engine_->laplacian(), u);
}

GroupSignal FilterBank::apply_delta(int j, const GroupSignal& u) const {
  if (j < 0 || j > J_) throw std::out_of_range("block index outside 0..J");
  if (method_ == ApplyMethod::kExact)
    return apply_multiplier(*engine_, psi_, scale(j), u, ApplyMethod::kExact).signal;
  return cached_filter(psi_, j, delta_cache_).apply(engine_->laplacian(), u);
}

Decomposition decompose(const FilterBank& bank, const GroupSignal& u) {
  Decomposition dec{bank.apply_s(0, u), {}, 0.0};
  dec.blocks.reserve(bank.top_scale() + 1);
  for (int j = 0; j <= bank.top_scale(); ++j) dec.blocks.push_back(bank.apply_delta(j, u));

  Eigen::VectorXd sum = dec.s0.values;
  for (const GroupSignal& b : dec.blocks) sum += b.values;
  const double denom = u.values.norm();
  dec.reconstruction_error = denom > 0.0 ? (u.values - sum).norm() / denom : 0.0;
  return dec;
}

GroupSignal square_function(const Decomposition& dec) {
  GroupSignal g = GroupSignal::zeros(*dec.s0.group);
  for (const GroupSignal& b : dec.blocks) g.values.array() += b.values.array().square();
  g.values = g.values.array().sqrt();
  return g;
}

LpStats lp_equivalence_stats(const FilterBank& bank,
                             const std::vector<GroupSignal>& ensemble, double p) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  LpStats stats;
  stats.p = p;
  for (const GroupSignal& u : ensemble) {
    const double denom = lp_norm(u, p);
    if (denom == 0.0) continue;
    Decomposition dec = decompose(bank, u);
    const double r = (lp_norm(dec.s0, p) + lp_norm(square_function(dec), p)) / denom;
    stats.ratios.push_back(r);
    stats.empirical_cp = std::max({stats.empirical_cp, r, r > 0.0 ? 1.0 / r : 0.0});
  }
  if (stats.ratios.empty()) throw std::invalid_argument("ensemble contains only zero signals");
  return stats;
}

}  // namespace lpbesov
