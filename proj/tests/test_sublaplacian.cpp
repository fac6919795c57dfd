#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "lpbesov/ensemble.hpp"
#include "lpbesov/sublaplacian.hpp"

using namespace lpbesov;

namespace {

CayleyGroup make_torus(int n, int d) {
  GroupSpec s;
  s.modulus = n;
  s.dimension = d;
  return CayleyGroup::build(s);
}

CayleyGroup make_heis(int n) {
  GroupSpec s;
  s.family = GroupFamily::heisenberg;
  s.modulus = n;
  return CayleyGroup::build(s);
}

GroupSignal random_signal(const CayleyGroup& g, std::uint64_t seed) {
  DeterministicRng rng(seed);
  GroupSignal f = GroupSignal::zeros(g);
  for (int i = 0; i < g.size(); ++i) f[i] = rng.normal();
  return f;
}

}  // namespace

TEST_CASE("two-point cycle has spectrum {0, 4}") {
  auto g = make_torus(2, 1);
  SubLaplacian L(g);
  Eigen::MatrixXd dense(L.matrix());
  // s = s^{-1} = 1, so L f(x) = 2 f(x) - 2 f(x+1).
  CHECK(dense(0, 0) == doctest::Approx(2.0));
  CHECK(dense(0, 1) == doctest::Approx(-2.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("cycle spectrum matches the Fourier symbol") {
  const int n = 8;
  auto g = make_torus(n, 1);
  SubLaplacian L(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(L.matrix())};
  std::vector<double> expect;
  for (int m = 0; m < n; ++m) expect.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * m / n));
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < n; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("constants are harmonic") {
  for (int variant = 0; variant < 2; ++variant) {
    auto g = variant == 0 ? make_torus(9, 2) : make_heis(4);
    SubLaplacian L(g);
    auto out = L.apply(GroupSignal::constant(g, 3.5));
    CHECK(lp_norm(out, kInfinity) <= 1e-13);
  }
}

TEST_CASE("operator is symmetric with the advertised spectral bound") {
  auto g = make_heis(4);
  SubLaplacian L(g);
  CHECK(L.lambda_max() == doctest::Approx(4.0 * g.generator_count()));
  auto f = random_signal(g, 1);
  auto h = random_signal(g, 2);
  CHECK(inner(L.apply(f), h) == doctest::Approx(inner(f, L.apply(h))).epsilon(1e-12));
  // Rayleigh quotient never exceeds the certified bound.
  const double rq = inner(L.apply(f), f) / inner(f, f);
  CHECK(rq <= L.lambda_max() + 1e-10);
  const double est = L.lambda_max_estimate();
  CHECK(est <= L.lambda_max() + 1e-9);
  CHECK(est > 0.0);
}

TEST_CASE("power iteration finds the top of an even cycle exactly") {
  auto g = make_torus(8, 1);
  SubLaplacian L(g);
  // Top eigenvalue 2 - 2 cos(pi) = 4 coincides with the certified bound.
  CHECK(L.lambda_max_estimate() == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("quadratic form splits into generator differences") {
  auto g = make_heis(5);
  SubLaplacian L(g);
  auto f = random_signal(g, 3);
  double sum = 0.0;
  for (int j = 0; j < g.generator_count(); ++j) {
    const double nj = lp_norm(apply_difference(f, j), 2.0);
    sum += nj * nj;
  }
  CHECK(inner(L.apply(f), f) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("difference operators act by right translation") {
  auto g = make_torus(4, 1);
  SubLaplacian L(g);
  auto f = GroupSignal::delta(g, 0);
  auto d = apply_difference(f, 0);
  // X f(x) = f(x s) - f(x): the delta at 0 shows up at x with x s = 0,
  // i.e. x = s^{-1} = 3 on the 4-cycle.
  CHECK(d[3] == doctest::Approx(1.0));
  CHECK(d[0] == doctest::Approx(-1.0));
  CHECK(d[1] == doctest::Approx(0.0));
  CHECK(d[2] == doctest::Approx(0.0));
}

TEST_CASE("difference words compose right-to-left") {
  auto g = make_torus(5, 2);
  auto f = random_signal(g, 4);
  auto manual = apply_difference(apply_difference(f, 1), 0);
  auto word = apply_difference_word(f, {0, 1});
  for (int i = 0; i < g.size(); ++i) CHECK(word[i] == doctest::Approx(manual[i]).epsilon(1e-15));
  // The empty word is the identity.
  auto same = apply_difference_word(f, {});
  for (int i = 0; i < g.size(); ++i) CHECK(same[i] == f[i]);
}

TEST_CASE("matrix agrees with the stencil definition") {
  auto g = make_heis(3);
  SubLaplacian L(g);
  auto f = random_signal(g, 5);
  auto lf = L.apply(f);
  for (int x = 0; x < g.size(); ++x) {
    double expect = 0.0;
    for (int j = 0; j < g.generator_count(); ++j)
      expect += 2.0 * f[x] - f[g.translate(x, j)] - f[g.translate_inverse(x, j)];
    CHECK(lf[x] == doctest::Approx(expect).epsilon(1e-13));
  }
}
