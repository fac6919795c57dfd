#include "lpbesov/sublaplacian.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace lpbesov {

SubLaplacian::SubLaplacian(const CayleyGroup& group) : group_(&group) {
  const int n = static_cast<int>(group.size());
  const int k = group.generator_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(n) * (2 * k + 1));
  for (int x = 0; x < n; ++x) {
    trip.emplace_back(x, x, 2.0 * k);
    for (int j = 0; j < k; ++j) {
      // setFromTriplets accumulates duplicates, which handles generators
      // that coincide with their inverses (e.g. modulus 2).
      trip.emplace_back(x, static_cast<int>(group.translate(x, j)), -1.0);
      trip.emplace_back(x, static_cast<int>(group.translate_inverse(x, j)), -1.0);
    }
  }
  mat_.resize(n, n);
  mat_.setFromTriplets(trip.begin(), trip.end());
  mat_.makeCompressed();
  lambda_max_ = 4.0 * k;
}

double SubLaplacian::lambda_max_estimate(std::uint64_t seed, int max_iters) const {
  const Eigen::Index n = mat_.rows();
  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Map the raw 64-bit draw to [-1, 1); avoids distribution classes whose
    // output is implementation-defined.
    v[i] = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
  }
  v.normalize();
  double rayleigh = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = mat_ * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - rayleigh) <= 1e-12 * std::max(1.0, std::abs(next))) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  return rayleigh;
}

GroupSignal SubLaplacian::apply(const GroupSignal& f) const {
  if (f.group != group_)
    throw std::invalid_argument("signal belongs to a different group");
  return GroupSignal(*group_, mat_ * f.values);
}

void SubLaplacian::write_coo(std::ostream& out) const {
  for (int outer = 0; outer < mat_.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(mat_, outer); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

GroupSignal apply_difference(const GroupSignal& f, int generator) {
  const CayleyGroup& g = *f.group;
  GroupSignal out = GroupSignal::zeros(g);
  const std::size_t n = static_cast<std::size_t>(g.size());
  for (std::size_t x = 0; x < n; ++x) {
    out.values[static_cast<Eigen::Index>(x)] =
        f.values[static_cast<Eigen::Index>(g.translate(x, generator))] -
        f.values[static_cast<Eigen::Index>(x)];
  }
  return out;
}

GroupSignal apply_difference_word(const GroupSignal& f, const std::vector<int>& word) {
  GroupSignal out = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out = apply_difference(out, *it);
  }
  return out;
}

}  // namespace lpbesov
