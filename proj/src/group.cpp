#include "lpbesov/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

namespace lpbesov {

std::string to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::torus: return "torus";
    case GroupFamily::heisenberg: return "heisenberg";
  }
  return "?";
}

std::optional<GroupFamily> parse_group_family(const std::string& name) {
  if (name == "torus") return GroupFamily::torus;
  if (name == "heisenberg") return GroupFamily::heisenberg;
  return std::nullopt;
}

std::int64_t GroupSpec::element_count() const {
  const int dims = family == GroupFamily::torus ? dimension : 3;
  std::int64_t n = 1;
  for (int i = 0; i < dims; ++i) {
    if (n > element_cap / modulus + 1) return element_cap + 1;  // saturate, caller rejects
    n *= modulus;
  }
  return n;
}

std::string GroupSpec::label() const {
  std::string s = to_string(family) + "-N" + std::to_string(modulus);
  if (family == GroupFamily::torus) s += "-d" + std::to_string(dimension);
  return s;
}

void GroupSpec::validate() const {
  if (modulus < 2) throw std::invalid_argument("group modulus must be at least 2");
  if (family == GroupFamily::torus && dimension < 1)
    throw std::invalid_argument("torus dimension must be at least 1");
  if (element_count() > element_cap)
    throw std::invalid_argument("element count exceeds configured cap (" +
                                std::to_string(element_cap) + ")");
}

namespace {

int mod_n(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

int CayleyGroup::encode(const std::vector<int>& c) const {
  const int n = spec_.modulus;
  int idx = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) idx = idx * n + c[i];
  return idx;
}

std::vector<int> CayleyGroup::coordinates(int idx) const {
  const int n = spec_.modulus;
  const int dims = spec_.family == GroupFamily::torus ? spec_.dimension : 3;
  std::vector<int> c(dims);
  for (int i = 0; i < dims; ++i) {
    c[i] = idx % n;
    idx /= n;
  }
  return c;
}

int CayleyGroup::multiply(int a, int b) const {
  const int n = spec_.modulus;
  const auto ca = coordinates(a);
  const auto cb = coordinates(b);
  std::vector<int> cc(ca.size());
  if (spec_.family == GroupFamily::torus) {
    for (std::size_t i = 0; i < ca.size(); ++i) cc[i] = mod_n(ca[i] + cb[i], n);
  } else {
    // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
    cc[0] = mod_n(ca[0] + cb[0], n);
    cc[1] = mod_n(ca[1] + cb[1], n);
    cc[2] = mod_n(static_cast<long long>(ca[2]) + cb[2] +
                      static_cast<long long>(ca[0]) * cb[1],
                  n);
  }
  return encode(cc);
}

CayleyGroup CayleyGroup::build(const GroupSpec& spec) {
  spec.validate();
  CayleyGroup g;
  g.spec_ = spec;
  g.size_ = static_cast<int>(spec.element_count());
  const int n = spec.modulus;

  if (spec.family == GroupFamily::torus) {
    g.pairs_ = spec.dimension;
    for (int j = 0; j < g.pairs_; ++j) {
      std::vector<int> c(spec.dimension, 0);
      c[j] = 1;
      g.gen_.push_back(g.encode(c));
      c[j] = n - 1;
      g.gen_inv_.push_back(g.encode(c));
    }
  } else {
    g.pairs_ = 2;
    g.gen_ = {g.encode({1, 0, 0}), g.encode({0, 1, 0})};
    g.gen_inv_ = {g.encode({n - 1, 0, 0}), g.encode({0, n - 1, 0})};
  }

  g.inverse_.resize(g.size_);
  for (int x = 0; x < g.size_; ++x) {
    const auto c = g.coordinates(x);
    if (spec.family == GroupFamily::torus) {
      std::vector<int> ci(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) ci[i] = mod_n(-c[i], n);
      g.inverse_[x] = g.encode(ci);
    } else {
      // (a,b,c)^{-1} = (-a, -b, a*b - c)
      g.inverse_[x] = g.encode({mod_n(-c[0], n), mod_n(-c[1], n),
                                mod_n(static_cast<long long>(c[0]) * c[1] - c[2], n)});
    }
  }

  g.fwd_.resize(static_cast<std::size_t>(g.size_) * g.pairs_);
  g.bwd_.resize(static_cast<std::size_t>(g.size_) * g.pairs_);
  for (int x = 0; x < g.size_; ++x) {
    for (int j = 0; j < g.pairs_; ++j) {
      g.fwd_[static_cast<std::size_t>(x) * g.pairs_ + j] = g.multiply(x, g.gen_[j]);
      g.bwd_[static_cast<std::size_t>(x) * g.pairs_ + j] = g.multiply(x, g.gen_inv_[j]);
    }
  }
  return g;
}

WordMetric word_metric(const CayleyGroup& g) {
  WordMetric m;
  m.dist.assign(g.size(), -1);
  m.dist[g.identity()] = 0;
  std::deque<int> queue{g.identity()};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int j = 0; j < g.generator_count(); ++j) {
      for (int y : {g.translate(x, j), g.translate_inverse(x, j)}) {
        if (m.dist[y] < 0) {
          m.dist[y] = m.dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  m.r_max = *std::max_element(m.dist.begin(), m.dist.end());
  if (m.r_max < 0) throw std::logic_error("generating set does not generate the group");
  m.ball_volume.assign(m.r_max + 1, 0);
  for (int d : m.dist) ++m.ball_volume[d];
  for (int r = 1; r <= m.r_max; ++r) m.ball_volume[r] += m.ball_volume[r - 1];
  return m;
}

void write_word_metric_csv(const WordMetric& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "element_index,dist\n";
  for (std::size_t i = 0; i < m.dist.size(); ++i) out << i << "," << m.dist[i] << "\n";
}

namespace {

// Least-squares slope of log V(r) against log r over integer radii [lo, hi].
std::optional<double> log_log_slope(const WordMetric& m, int lo, int hi) {
  if (hi - lo + 1 < 2 || lo < 1) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int count = hi - lo + 1;
  for (int r = lo; r <= hi; ++r) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(static_cast<double>(m.volume(r)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom <= 0) return std::nullopt;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace

GrowthProfile growth_profile(const WordMetric& m) {
  GrowthProfile p;
  const int half = m.r_max / 2;
  double k_hat = 1.0;
  for (int r = 1; r <= half; ++r) {
    const double ratio = static_cast<double>(m.volume(2 * r)) / static_cast<double>(m.volume(r));
    k_hat = std::max(k_hat, ratio);
  }
  p.doubling_constant = k_hat;

  p.small_window = {1, std::min(6, m.r_max / 4)};
  // Radii below 3 measure lattice combinatorics, not the growth degree; on
  // nilpotent models the transient reaches ~r_max/4, so start the fit there.
  p.large_window = {std::max(3, m.r_max / 4), half};

  // Fit needs at least 4 radii in [3, r_max/2] to say anything about growth.
  int usable = 0;
  for (int r = 3; r <= half; ++r) ++usable;
  if (usable < 4) {
    p.sufficient_range = false;
    return p;
  }

  p.local_dimension = log_log_slope(m, p.small_window.r_lo, p.small_window.r_hi);
  p.global_dimension = log_log_slope(m, p.large_window.r_lo, p.large_window.r_hi);
  p.sufficient_range = p.local_dimension.has_value() && p.global_dimension.has_value();
  if (p.sufficient_range) {
    const int half_local = static_cast<int>(std::floor(*p.local_dimension / 2.0));
    const int half_global = static_cast<int>(std::floor(*p.global_dimension / 2.0));
    p.smoothing_order = std::max(1, 1 + std::max(half_local, half_global));
  }
  return p;
}

}  // namespace lpbesov
