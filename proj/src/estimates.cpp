#include "lpbesov/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpbesov/sublaplacian.hpp"

namespace lpbesov {

namespace {

// 1/p' = 1 - 1/p with the endpoint conventions 1/p' = 0 at p = 1, 1 at p = inf.
double conjugate_exponent_inv(double p) {
  if (p == kInfinity) return 1.0;
  if (p < 1.0) throw std::invalid_argument("p must be in [1, inf]");
  return 1.0 - 1.0 / p;
}

double exponent_inv(double p) { return p == kInfinity ? 0.0 : 1.0 / p; }

void check_metric(const GroupSignal& f, const WordMetric& metric) {
  if (static_cast<int>(metric.dist.size()) != f.size())
    throw std::invalid_argument("metric does not match the signal's group");
}

GroupSignal derived(const GroupSignal& K, const std::vector<int>& word) {
  return word.empty() ? K : apply_difference_word(K, word);
}

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double weighted_kernel_norm(const GroupSignal& K, const WordMetric& metric, int alpha,
                            const std::vector<int>& word, double p) {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  check_metric(K, metric);
  GroupSignal g = derived(K, word);
  for (int x = 0; x < g.size(); ++x)
    g.values[x] *= std::pow(1.0 + metric.dist[x], alpha);
  return lp_norm(g, p);
}

double schwartz_seminorm(const GroupSignal& f, const WordMetric& metric, int alpha,
                         const std::vector<int>& word) {
  return weighted_kernel_norm(f, metric, alpha, word, kInfinity);
}

EstimateReport check_kernel_estimates(const SpectralEngine& engine, const Multiplier& m,
                                      int norm_order, const KernelSweep& sweep,
                                      const WordMetric& metric, const GrowthProfile& growth,
                                      ApplyMethod method) {
  if (norm_order < 0) throw std::invalid_argument("norm order must be >= 0");
  bool need_dimension = false;
  for (const auto& w : sweep.words) need_dimension |= !w.empty();
  if (need_dimension && !growth.local_dimension)
    throw std::invalid_argument("derivative rows need a fitted local dimension");

  const double mnorm = multiplier_norm(m, norm_order).value;
  const double d = growth.local_dimension.value_or(0.0);

  EstimateReport rep;
  rep.name = "weighted-kernel-norms[" + m.name() + "]";
  rep.norm_order = norm_order;
  for (double t : sweep.t) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel scales must be positive");
    const GroupSignal Mt = kernel_of(engine, m, t, method).signal;
    for (const std::vector<int>& word : sweep.words) {
      if (!word.empty() && t > 1.0) continue;  // derivative envelope holds for t <= 1
      for (int alpha : sweep.alpha) {
        for (double p : sweep.p) {
          EstimateRow row;
          row.t = t;
          row.alpha = alpha;
          row.word = word;
          row.p = p;
          row.measured = weighted_kernel_norm(Mt, metric, alpha, word, p);
          const double cpi = conjugate_exponent_inv(p);
          if (word.empty()) {
            row.envelope = std::pow(1.0 + std::sqrt(t), alpha) *
                           std::pow(metric.volume_at(std::sqrt(t)), -cpi) * mnorm;
          } else {
            row.envelope =
                std::pow(t, -(0.5 * d * cpi + 0.5 * static_cast<double>(word.size()))) * mnorm;
          }
          if (row.envelope > 0.0) {
            row.ratio = row.measured / row.envelope;
          } else {
            row.ratio = kInfinity;
            ++rep.degenerate_rows;
          }
          rep.fitted_constant = std::max(rep.fitted_constant, row.ratio);
          rep.rows.push_back(std::move(row));
        }
      }
    }
  }
  rep.pass = rep.degenerate_rows == 0 && std::isfinite(rep.fitted_constant);
  return rep;
}

GaussianFit check_gaussian_bound(const SpectralEngine& engine, const WordMetric& metric,
                                 const GrowthProfile& growth, const std::vector<double>& t_sweep,
                                 const std::vector<int>& word, ApplyMethod method) {
  if (t_sweep.empty()) throw std::invalid_argument("empty t sweep");
  const double t_cap = 0.0625 * metric.r_max * metric.r_max;  // (r_max/4)^2
  for (double t : t_sweep) {
    if (!(t > 0.0) || t > t_cap)
      throw std::invalid_argument("t must lie in (0, (r_max/4)^2] to avoid wrap-around");
    if (!word.empty() && t > 1.0)
      throw std::invalid_argument("the derivative bound is restricted to t <= 1");
  }
  if (!word.empty() && !growth.local_dimension)
    throw std::invalid_argument("derivative rows need a fitted local dimension");

  GaussianFit fit;
  fit.word = word;
  for (double t : t_sweep) {
    GroupSignal K = derived(heat_kernel(engine, t, method), word);
    check_metric(K, metric);
    const double prefactor =
        word.empty()
            ? 1.0 / metric.volume_at(std::sqrt(t))
            : std::pow(t, -0.5 * (*growth.local_dimension + static_cast<double>(word.size())));

    // Values at spectral roundoff level are noise, not kernel decay; fitting
    // through them would demand an envelope no Gaussian satisfies.
    const double peak = K.values.cwiseAbs().maxCoeff();
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * peak;
    std::vector<std::pair<double, double>> samples;  // (|x|^2, |K(x)|)
    const int r_half = metric.r_max / 2;
    for (int x = 0; x < K.size(); ++x) {
      const double v = std::abs(K.values[x]);
      if (metric.dist[x] <= r_half && v > floor)
        samples.emplace_back(static_cast<double>(metric.dist[x]) * metric.dist[x], v);
    }
    if (samples.empty()) throw std::runtime_error("kernel vanished over the fit window");

    const auto feasible = [&](double c) {
      for (const auto& [r2, v] : samples)
        if (v > c * prefactor * std::exp(-r2 / (c * t)) * (1.0 + 1e-12)) return false;
      return true;
    };
    double hi = 1.0;
    while (!feasible(hi)) {
      hi *= 2.0;
      if (hi > 1e30) throw std::runtime_error("gaussian fit did not converge");
    }
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-9 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
    fit.rows.push_back(GaussianFitRow{t, hi});
  }
  auto [lo, hi] = std::minmax_element(
      fit.rows.begin(), fit.rows.end(),
      [](const GaussianFitRow& a, const GaussianFitRow& b) { return a.constant < b.constant; });
  fit.span = lo->constant > 0.0 ? hi->constant / lo->constant : kInfinity;
  return fit;
}

std::optional<double> bernstein_ratio(const FilterBank& bank, const GroupSignal& u,
                                      const std::vector<int>& word, double sigma, double p,
                                      double q, int j, double d_loc, BlockKind kind) {
  if ((p != kInfinity && p < 1.0) || (q != kInfinity && q < 1.0))
    throw std::invalid_argument("exponents must be in [1, inf]");
  if (!(exponent_inv(p) >= exponent_inv(q)))
    throw std::invalid_argument("requires p <= q");
  if (kind == BlockKind::kLow && sigma < 0.0)
    throw std::invalid_argument("sigma must be >= 0 for the low-pass variant");
  const GroupSignal block =
      kind == BlockKind::kBand ? bank.apply_delta(j, u) : bank.apply_s(j, u);
  const double denom = lp_norm(block, p);
  if (denom < 1e-13) return std::nullopt;
  GroupSignal v = sigma == 0.0 ? block : apply_half_power(bank.engine(), sigma, block);
  v = derived(v, word);
  const double expo =
      static_cast<double>(word.size()) + sigma + d_loc * (exponent_inv(p) - exponent_inv(q));
  return lp_norm(v, q) / (std::exp2(j * expo) * denom);
}

BernsteinTrend bernstein_trend(const FilterBank& bank, const GroupSignal& u,
                               const std::vector<int>& word, double sigma, double p, double q,
                               double d_loc) {
  BernsteinTrend trend;
  trend.word = word;
  trend.sigma = sigma;
  trend.p = p;
  trend.q = q;
  std::vector<double> xs, ys;
  for (int j = 0; j <= bank.top_scale(); ++j) {
    const auto ratio = bernstein_ratio(bank, u, word, sigma, p, q, j, d_loc, BlockKind::kBand);
    if (!ratio) continue;
    trend.rows.push_back(BernsteinRow{j, *ratio});
    xs.push_back(j);
    ys.push_back(std::log10(*ratio));
  }
  trend.log10_slope = lsq_slope(xs, ys);
  return trend;
}

std::vector<DecayProfileRow> schwartz_decay_profile(const GroupSignal& K,
                                                    const WordMetric& metric,
                                                    const std::vector<int>& alphas,
                                                    const std::vector<int>& word) {
  std::vector<DecayProfileRow> profile;
  for (int alpha : alphas)
    profile.push_back(DecayProfileRow{alpha, schwartz_seminorm(K, metric, alpha, word)});
  return profile;
}

std::vector<double> sj_convergence_check(const FilterBank& bank, const GroupSignal& f,
                                         int alpha, const std::vector<int>& word) {
  const WordMetric metric = word_metric(*f.group);
  std::vector<double> seq;
  for (int j = 0; j <= bank.top_scale() + 1; ++j) {
    GroupSignal res = bank.apply_s(j, f);
    res.values = f.values - res.values;
    seq.push_back(schwartz_seminorm(res, metric, alpha, word));
  }
  return seq;
}

BlockProfile block_l1_profile(const FilterBank& bank) {
  const GroupSignal delta = GroupSignal::delta(bank.group(), bank.group().identity());
  BlockProfile profile;
  for (int j = 0; j <= bank.top_scale(); ++j)
    profile.l1_norms.push_back(lp_norm(bank.apply_delta(j, delta), 1.0));
  std::vector<double> sorted = profile.l1_norms;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  const double median =
      n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  profile.max_over_median = median > 0.0 ? sorted.back() / median : kInfinity;
  return profile;
}

}  // namespace lpbesov
