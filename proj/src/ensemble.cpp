#include "lpbesov/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lpbesov {

double DeterministicRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // 1 - u1 in (0, 1]
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::vector<GroupSignal> gaussian_ensemble(const CayleyGroup& g, int count,
                                           std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("ensemble size must be >= 0");
  DeterministicRng rng(seed);
  std::vector<GroupSignal> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    GroupSignal u = GroupSignal::zeros(g);
    for (int x = 0; x < u.size(); ++x) u[x] = rng.normal();
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<GroupSignal> structured_ensemble(const CayleyGroup& g, const WordMetric& metric,
                                             const SpectralEngine* engine) {
  if (static_cast<int>(metric.dist.size()) != g.size())
    throw std::invalid_argument("metric does not match group");
  std::vector<GroupSignal> out;
  out.push_back(GroupSignal::delta(g, g.identity()));
  const auto far = std::max_element(metric.dist.begin(), metric.dist.end());
  out.push_back(GroupSignal::delta(g, static_cast<int>(far - metric.dist.begin())));

  std::set<int> radii = {1, std::max(1, metric.r_max / 4), std::max(1, metric.r_max / 2)};
  for (int r : radii) out.push_back(GroupSignal::ball_indicator(g, metric, r));
  out.push_back(GroupSignal::constant(g, 1.0));

  if (engine != nullptr && engine->dense_available() && g.size() >= 4) {
    const Eigen::MatrixXd& Q = engine->eigenvectors();
    for (Eigen::Index col : {Eigen::Index{1}, Q.cols() / 2, Q.cols() - 1})
      out.push_back(GroupSignal(g, Q.col(col)));
  }
  return out;
}

}  // namespace lpbesov
