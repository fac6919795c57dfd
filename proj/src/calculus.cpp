#include "lpbesov/calculus.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpbesov {

namespace {
constexpr Eigen::Index kAutoExactCap = 2048;
constexpr double kExactCertified = 1e-11;
}  // namespace

ApplyMethod parse_apply_method(const std::string& text) {
  if (text == "auto") return ApplyMethod::kAuto;
  if (text == "exact") return ApplyMethod::kExact;
  if (text == "chebyshev") return ApplyMethod::kChebyshev;
  throw std::invalid_argument("unknown method '" + text +
                              "'; expected auto, exact or chebyshev");
}

std::string to_string(ApplyMethod m) {
  switch (m) {
    case ApplyMethod::kAuto: return "auto";
    case ApplyMethod::kExact: return "exact";
    case ApplyMethod::kChebyshev: return "chebyshev";
  }
  return "?";
}

SpectralEngine::SpectralEngine(const SubLaplacian& L, Eigen::Index dense_cap)
    : lap_(&L), dense_cap_(dense_cap) {}

void SpectralEngine::ensure_eigen() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (have_eigen_) return;
  const Eigen::Index n = lap_->matrix().rows();
  if (n > dense_cap_) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "dimension %lld exceeds dense cap %lld; use the chebyshev path",
                  static_cast<long long>(n), static_cast<long long>(dense_cap_));
    throw std::runtime_error(buf);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(lap_->matrix()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  evals_ = solver.eigenvalues();
  const double top = lap_->lambda_max();
  for (Eigen::Index i = 0; i < evals_.size(); ++i) {
    if (evals_[i] < 0.0) evals_[i] = 0.0;
    if (evals_[i] > top) evals_[i] = top;
  }
  evecs_ = solver.eigenvectors();
  have_eigen_ = true;
}

const Eigen::VectorXd& SpectralEngine::eigenvalues() const {
  ensure_eigen();
  return evals_;
}

const Eigen::MatrixXd& SpectralEngine::eigenvectors() const {
  ensure_eigen();
  return evecs_;
}

GroupSignal SpectralEngine::apply_function(const std::function<double(double)>& g,
                                           const GroupSignal& f) const {
  if (f.group != &group())
    throw std::invalid_argument("signal belongs to a different group");
  ensure_eigen();
  Eigen::VectorXd coef = evecs_.transpose() * f.values;
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef[i] *= g(evals_[i]);
  return GroupSignal(group(), evecs_ * coef);
}

ChebyshevFilter::ChebyshevFilter(std::function<double(double)> g, double lambda_max,
                                 double tolerance, int max_degree)
    : lambda_max_(lambda_max) {
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");

  // Coefficients are computed past the degree cap so the tail estimate stays
  // honest when the cap truncates a slowly converging expansion.
  const int top = max_degree + 32;
  int nodes = 4096;
  while (nodes < 2 * (top + 1)) nodes *= 2;

  std::vector<double> theta(nodes), gval(nodes);
  for (int i = 0; i < nodes; ++i) {
    theta[i] = M_PI * (i + 0.5) / nodes;
    const double x = std::cos(theta[i]);
    double lambda = 0.5 * lambda_max * (x + 1.0);
    if (lambda < 0.0) lambda = 0.0;
    gval[i] = g(lambda);
    if (!std::isfinite(gval[i]))
      throw std::runtime_error("multiplier evaluated non-finite inside the spectral interval");
  }

  // a_0 = (1/M) sum g_i, a_k = (2/M) sum g_i cos(k theta_i); p = sum a_k T_k.
  coeff_.assign(top + 1, 0.0);
  for (int k = 0; k <= top; ++k) {
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) acc += gval[i] * std::cos(k * theta[i]);
    coeff_[k] = (k == 0 ? 1.0 : 2.0) * acc / nodes;
  }

  // Smallest degree whose coefficient tail fits inside half the tolerance;
  // the other half absorbs the rounding floor.
  std::vector<double> tail(top + 2, 0.0);
  for (int k = top; k >= 1; --k) tail[k] = tail[k + 1] + std::abs(coeff_[k]);
  degree_ = max_degree;
  tolerance_met_ = false;
  for (int d = 0; d <= max_degree; ++d) {
    if (tail[d + 1] <= 0.5 * tolerance) {
      degree_ = d;
      tolerance_met_ = true;
      break;
    }
  }
  coeff_.resize(degree_ + 1);
  certified_error_ = tail[degree_ + 1] + 1e-14 + 5e-16 * (degree_ + 1);
}

double ChebyshevFilter::evaluate(double lambda) const {
  const double x = 2.0 * lambda / lambda_max_ - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int k = degree_; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + coeff_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coeff_[0];
}

GroupSignal ChebyshevFilter::apply(const SubLaplacian& L, const GroupSignal& f) const {
  if (f.group != &L.group())
    throw std::invalid_argument("signal belongs to a different group");
  const double scale = 2.0 / lambda_max_;
  const auto& A = L.matrix();
  // T_k vectors for A' = (2/lambda_max) L - I.
  Eigen::VectorXd t_prev = f.values;
  Eigen::VectorXd acc = coeff_[0] * t_prev;
  if (degree_ >= 1) {
    Eigen::VectorXd t_cur = scale * (A * f.values) - f.values;
    acc += coeff_[1] * t_cur;
    for (int k = 2; k <= degree_; ++k) {
      Eigen::VectorXd t_next = 2.0 * (scale * (A * t_cur) - t_cur) - t_prev;
      t_prev.swap(t_cur);
      t_cur.swap(t_next);
      acc += coeff_[k] * t_cur;
    }
  }
  return GroupSignal(L.group(), std::move(acc));
}

namespace {

ApplyMethod resolve(const SpectralEngine& engine, ApplyMethod method) {
  if (method != ApplyMethod::kAuto) return method;
  const Eigen::Index n = engine.laplacian().matrix().rows();
  return (engine.dense_available() && n <= kAutoExactCap) ? ApplyMethod::kExact
                                                          : ApplyMethod::kChebyshev;
}

AppliedResult apply_scalar_function(const SpectralEngine& engine,
                                    const std::function<double(double)>& g,
                                    const GroupSignal& f, ApplyMethod method,
                                    double tolerance, int max_degree) {
  method = resolve(engine, method);
  if (method == ApplyMethod::kExact) {
    return AppliedResult{engine.apply_function(g, f),
                         FilterApplication{"exact", 0, kExactCertified}};
  }
  ChebyshevFilter filter(g, engine.laplacian().lambda_max(), tolerance, max_degree);
  if (!filter.tolerance_met()) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "chebyshev degree cap %d reached; achieved tail bound %.3e > tolerance %.3e",
                  max_degree, filter.certified_error(), tolerance);
    throw std::runtime_error(buf);
  }
  return AppliedResult{filter.apply(engine.laplacian(), f),
                       FilterApplication{"chebyshev", filter.degree(),
                                         filter.certified_error()}};
}

}  // namespace

AppliedResult apply_multiplier(const SpectralEngine& engine, const Multiplier& m,
                               double t, const GroupSignal& f, ApplyMethod method,
                               double tolerance, int max_degree) {
  if (!(t > 0.0)) throw std::invalid_argument("scale t must be positive");
  auto g = [&m, t](double lambda) { return m(t * lambda); };
  return apply_scalar_function(engine, g, f, method, tolerance, max_degree);
}

AppliedResult kernel_of(const SpectralEngine& engine, const Multiplier& m, double t,
                        ApplyMethod method, double tolerance, int max_degree) {
  GroupSignal delta = GroupSignal::delta(engine.group(), engine.group().identity());
  return apply_multiplier(engine, m, t, delta, method, tolerance, max_degree);
}

GroupSignal heat_kernel(const SpectralEngine& engine, double t, ApplyMethod method) {
  return kernel_of(engine, Multiplier::heat(), t, method).signal;
}

GroupSignal convolve(const GroupSignal& f, const GroupSignal& g) {
  require_same_group(f, g);
  const CayleyGroup& G = *f.group;
  const std::size_t n = G.size();
  GroupSignal out = GroupSignal::zeros(G);
  for (std::size_t y = 0; y < n; ++y) {
    const double fy = f.values[static_cast<Eigen::Index>(y)];
    if (fy == 0.0) continue;
    const std::size_t yi = G.inverse(y);
    for (std::size_t x = 0; x < n; ++x) {
      out.values[static_cast<Eigen::Index>(x)] +=
          fy * g.values[static_cast<Eigen::Index>(G.multiply(yi, x))];
    }
  }
  return out;
}

AppliedResult wave_cosine(const SpectralEngine& engine, double s, const GroupSignal& f,
                          ApplyMethod method, double tolerance, int max_degree) {
  auto g = [s](double lambda) {
    return std::cos(s * std::sqrt(lambda < 0.0 ? 0.0 : lambda));
  };
  return apply_scalar_function(engine, g, f, method, tolerance, max_degree);
}

GroupSignal apply_half_power(const SpectralEngine& engine, double sigma,
                             const GroupSignal& f) {
  if (sigma == 0.0) return f;
  const double zero_tol = 1e-12 * std::max(1.0, engine.laplacian().lambda_max());
  auto g = [sigma, zero_tol](double lambda) {
    if (lambda <= zero_tol) return 0.0;
    return std::pow(lambda, 0.5 * sigma);
  };
  return engine.apply_function(g, f);
}

}  // namespace lpbesov
