#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lpbesov/group.hpp"
#include "lpbesov/signal.hpp"

namespace lpbesov {

/// L f(x) = sum_j (2 f(x) - f(x s_j) - f(x s_j^-1)) over the generator list.
/// Symmetric positive semidefinite; the constant vector is in its kernel.
class SubLaplacian {
 public:
  explicit SubLaplacian(const CayleyGroup& group);

  const CayleyGroup& group() const { return *group_; }
  const Eigen::SparseMatrix<double>& matrix() const { return mat_; }

  /// Certified upper bound on the spectrum: 4 * generator_count, from the
  /// Gershgorin row bound (rows have diagonal 2k and off-diagonal mass 2k).
  double lambda_max() const { return lambda_max_; }

  /// Power-iteration Rayleigh quotient; a lower estimate of the true top
  /// eigenvalue, reported as a diagnostic next to the certified bound.
  double lambda_max_estimate(std::uint64_t seed = 0, int max_iters = 300) const;

  GroupSignal apply(const GroupSignal& f) const;

  /// Sorted (row, col, value) triples of the nonzero entries.
  void write_coo(std::ostream& out) const;

 private:
  const CayleyGroup* group_;
  Eigen::SparseMatrix<double> mat_;
  double lambda_max_;
};

/// X_j f(x) = f(x s_j) - f(x); generator index is 0-based.
GroupSignal apply_difference(const GroupSignal& f, int generator);

/// X^I with I = (i_1, ..., i_k): the rightmost index acts first, so the
/// result is X_{i_1}(X_{i_2}(... X_{i_k} f)).
GroupSignal apply_difference_word(const GroupSignal& f, const std::vector<int>& word);

}  // namespace lpbesov
