#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lpbesov/multiplier.hpp"
#include "lpbesov/signal.hpp"
#include "lpbesov/sublaplacian.hpp"

namespace lpbesov {

enum class ApplyMethod { kAuto, kExact, kChebyshev };

ApplyMethod parse_apply_method(const std::string& text);
std::string to_string(ApplyMethod m);

/// How an operator application was carried out and how far it can be trusted:
/// certified_error bounds ||computed - m(tL)f||_2 / ||f||_2.
struct FilterApplication {
  std::string method;
  int degree = 0;  // 0 on the exact path
  double certified_error = 0.0;
};

struct AppliedResult {
  GroupSignal signal;
  FilterApplication info;
};

/// Dense spectral access to a SubLaplacian. The eigendecomposition is
/// computed lazily on first use and cached; groups above dense_cap must go
/// through the Chebyshev path instead.
class SpectralEngine {
 public:
  explicit SpectralEngine(const SubLaplacian& L, Eigen::Index dense_cap = 4096);

  const SubLaplacian& laplacian() const { return *lap_; }
  const CayleyGroup& group() const { return lap_->group(); }
  Eigen::Index dense_cap() const { return dense_cap_; }
  bool dense_available() const { return lap_->matrix().rows() <= dense_cap_; }

  /// Ascending eigenvalues, clamped into [0, lambda_max] for roundoff.
  const Eigen::VectorXd& eigenvalues() const;
  const Eigen::MatrixXd& eigenvectors() const;

  /// Q g(Lambda) Q^T f. g sees eigenvalues clamped to be >= 0.
  GroupSignal apply_function(const std::function<double(double)>& g,
                             const GroupSignal& f) const;

 private:
  void ensure_eigen() const;

  const SubLaplacian* lap_;
  Eigen::Index dense_cap_;
  mutable std::mutex mu_;
  mutable bool have_eigen_ = false;
  mutable Eigen::VectorXd evals_;
  mutable Eigen::MatrixXd evecs_;
};

/// Polynomial filter p(L) ~ g(L) on [0, lambda_max], built from Chebyshev
/// coefficients with an explicit certified error = truncated-coefficient
/// tail plus a rounding floor.
class ChebyshevFilter {
 public:
  ChebyshevFilter(std::function<double(double)> g, double lambda_max,
                  double tolerance = 1e-8, int max_degree = 2000);

  int degree() const { return degree_; }
  double certified_error() const { return certified_error_; }
  bool tolerance_met() const { return tolerance_met_; }
  double lambda_max() const { return lambda_max_; }

  /// Clenshaw evaluation of the truncated series at a scalar lambda.
  double evaluate(double lambda) const;
  /// Three-term recurrence on vectors: sum_k c_k T_k((2/lambda_max)L - I) f.
  GroupSignal apply(const SubLaplacian& L, const GroupSignal& f) const;

 private:
  double lambda_max_;
  int degree_;
  double certified_error_;
  bool tolerance_met_;
  std::vector<double> coeff_;  // a_0 .. a_degree with p = sum a_k T_k (a_0 pre-halved)
};

/// m(tL) f. Auto picks exact for groups of size <= 2048 when the dense path
/// is allowed, Chebyshev otherwise. Chebyshev throws if the degree cap
/// cannot meet the tolerance.
AppliedResult apply_multiplier(const SpectralEngine& engine, const Multiplier& m,
                               double t, const GroupSignal& f,
                               ApplyMethod method = ApplyMethod::kAuto,
                               double tolerance = 1e-8, int max_degree = 2000);

/// M_t = m(tL) delta_e, the convolution kernel of m(tL).
AppliedResult kernel_of(const SpectralEngine& engine, const Multiplier& m, double t,
                        ApplyMethod method = ApplyMethod::kAuto,
                        double tolerance = 1e-8, int max_degree = 2000);

/// p_t = e^{-tL} delta_e.
GroupSignal heat_kernel(const SpectralEngine& engine, double t,
                        ApplyMethod method = ApplyMethod::kAuto);

/// f*g(x) = sum_y f(y) g(y^{-1} x).
GroupSignal convolve(const GroupSignal& f, const GroupSignal& g);

/// cos(s sqrt(L)) f; entire in lambda, so both paths apply.
AppliedResult wave_cosine(const SpectralEngine& engine, double s, const GroupSignal& f,
                          ApplyMethod method = ApplyMethod::kAuto,
                          double tolerance = 1e-8, int max_degree = 2000);

/// (sqrt L)^sigma f by exact spectral mapping; the lambda = 0 component is
/// dropped for every sigma != 0 (band-limited inputs carry none up to
/// tolerance). Requires the dense path.
GroupSignal apply_half_power(const SpectralEngine& engine, double sigma,
                             const GroupSignal& f);

}  // namespace lpbesov
