#include "doctest.h"

#include <cmath>

#include "lpbesov/ensemble.hpp"
#include "lpbesov/filter_bank.hpp"

using namespace lpbesov;

namespace {

CayleyGroup make_torus(int n, int d) {
  GroupSpec s;
  s.modulus = n;
  s.dimension = d;
  return CayleyGroup::build(s);
}

struct Setup {
  CayleyGroup group;
  SubLaplacian lap;
  SpectralEngine engine;

  explicit Setup(CayleyGroup g) : group(std::move(g)), lap(group), engine(lap) {}
};

}  // namespace

TEST_CASE("saturation scale worked examples") {
  CHECK(saturation_scale(4.0) == 2);
  CHECK(saturation_scale(8.0) == 2);
  CHECK(saturation_scale(16.0) == 3);
  CHECK(saturation_scale(1.0) == 1);
  CHECK(saturation_scale(3.9) == 1);
  CHECK_THROWS_AS(saturation_scale(0.0), std::invalid_argument);
  // The defining inequality holds and fails one step down.
  for (double lm : {0.7, 4.0, 100.0}) {
    const int J = saturation_scale(lm);
    CHECK(std::exp2(2.0 * (J + 1)) > 4.0 * lm);
    if (J > 0) CHECK(std::exp2(2.0 * J) <= 4.0 * lm);
  }
}

TEST_CASE("bank saturates above the top scale") {
  Setup s(make_torus(64, 1));
  FilterBank bank(s.engine);
  CHECK(bank.method() == ApplyMethod::kExact);
  CHECK(bank.top_scale() == 2);
  CHECK(bank.scale(1) == doctest::Approx(0.25));
  DeterministicRng rng(21);
  GroupSignal u = GroupSignal::zeros(s.group);
  for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();
  // S_{J+1} = identity: the cutoff is 1 on the whole spectrum there.
  auto su = bank.apply_s(bank.top_scale() + 1, u);
  CHECK(lp_norm(GroupSignal(s.group, su.values - u.values), kInfinity) <=
        1e-11 * lp_norm(u, kInfinity));
  CHECK_THROWS_AS(bank.apply_s(-1, u), std::out_of_range);
  CHECK_THROWS_AS(bank.apply_delta(-1, u), std::out_of_range);
  CHECK_THROWS_AS(bank.apply_delta(bank.top_scale() + 1, u), std::out_of_range);
}

TEST_CASE("decomposition reconstructs the signal on both paths") {
  Setup s(make_torus(64, 1));
  DeterministicRng rng(22);
  GroupSignal u = GroupSignal::zeros(s.group);
  for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();

  FilterBank exact(s.engine, ApplyMethod::kExact);
  auto dec = decompose(exact, u);
  CHECK(static_cast<int>(dec.blocks.size()) == exact.top_scale() + 1);
  CHECK(dec.reconstruction_error <= 1e-10);
  CHECK(dec.reconstruction_error <= exact.error_budget());

  FilterBank cheb(s.engine, ApplyMethod::kChebyshev);
  auto dec2 = decompose(cheb, u);
  CHECK(dec2.reconstruction_error <= 1e-6);
  CHECK(dec2.reconstruction_error <= cheb.error_budget());
}

TEST_CASE("error budget scales with the path accuracy") {
  Setup s(make_torus(64, 1));
  FilterBank exact(s.engine, ApplyMethod::kExact);
  CHECK(exact.error_budget() == doctest::Approx(1e-11 * (exact.top_scale() + 2)));
  FilterBank cheb(s.engine, ApplyMethod::kChebyshev, 1e-7);
  CHECK(cheb.error_budget() == doctest::Approx(1e-7 * (cheb.top_scale() + 2)));
}

TEST_CASE("bands two scales apart annihilate each other") {
  Setup s(make_torus(64, 1));
  FilterBank bank(s.engine, ApplyMethod::kExact);
  REQUIRE(bank.top_scale() >= 2);
  DeterministicRng rng(23);
  GroupSignal u = GroupSignal::zeros(s.group);
  for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();
  auto once = bank.apply_delta(2, u);
  auto twice = bank.apply_delta(0, once);
  CHECK(lp_norm(twice, 2.0) <= 1e-10 * lp_norm(u, 2.0));
}

TEST_CASE("wider cutoffs reproduce the blocks") {
  Setup s(make_torus(32, 1));
  FilterBank bank(s.engine, ApplyMethod::kExact);
  DeterministicRng rng(24);
  GroupSignal u = GroupSignal::zeros(s.group);
  for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();
  auto tphi = Multiplier::tilde_phi();
  auto tpsi = Multiplier::tilde_psi();
  for (int j = 0; j <= bank.top_scale(); ++j) {
    auto sj = bank.apply_s(j, u);
    auto rs = apply_multiplier(s.engine, tphi, bank.scale(j), sj, ApplyMethod::kExact);
    CHECK(lp_norm(GroupSignal(s.group, rs.signal.values - sj.values), 2.0) <=
          1e-9 * lp_norm(u, 2.0));
    auto dj = bank.apply_delta(j, u);
    auto rd = apply_multiplier(s.engine, tpsi, bank.scale(j), dj, ApplyMethod::kExact);
    CHECK(lp_norm(GroupSignal(s.group, rd.signal.values - dj.values), 2.0) <=
          1e-9 * lp_norm(u, 2.0));
  }
}

TEST_CASE("an eigenvector meets at most two bands") {
  Setup s(make_torus(64, 1));
  FilterBank bank(s.engine, ApplyMethod::kExact);
  const auto& evals = s.engine.eigenvalues();
  const auto& evecs = s.engine.eigenvectors();
  int checked_band = 0, checked_low = 0;
  for (int k = 0; k < s.group.size(); ++k) {
    GroupSignal v(s.group, evecs.col(k));
    int active = 0;
    for (int j = 0; j <= bank.top_scale(); ++j) {
      if (lp_norm(bank.apply_delta(j, v), 2.0) > 1e-11) ++active;
    }
    CHECK(active <= 2);
    if (evals[k] > 0.3 && evals[k] < 3.9) {
      // Inside the covered range at least one band sees the eigenvector.
      CHECK(active >= 1);
      ++checked_band;
    } else if (evals[k] < 0.2) {
      // Below the first band the eigenvector lives purely in S_0.
      CHECK(active == 0);
      ++checked_low;
    }
  }
  CHECK(checked_band > 0);
  CHECK(checked_low > 0);
}

TEST_CASE("square function squares to the block energy") {
  Setup s(make_torus(16, 1));
  FilterBank bank(s.engine, ApplyMethod::kExact);
  DeterministicRng rng(25);
  GroupSignal u = GroupSignal::zeros(s.group);
  for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();
  auto dec = decompose(bank, u);
  auto g = square_function(dec);
  for (int x = 0; x < u.size(); ++x) {
    double acc = 0.0;
    for (const auto& b : dec.blocks) acc += b[x] * b[x];
    CHECK(g[x] * g[x] == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("two-norm equivalence ratios sit inside the frame window") {
  Setup s(make_torus(64, 1));
  FilterBank bank(s.engine, ApplyMethod::kExact);
  auto ensemble = gaussian_ensemble(s.group, 50, 7);
  auto stats = lp_equivalence_stats(bank, ensemble, 2.0);
  REQUIRE(stats.ratios.size() == 50);
  const double lo = 1.0 / std::sqrt(6.0) - 0.01;
  const double hi = std::sqrt(2.0) + 0.01;
  for (double r : stats.ratios) {
    CHECK(r >= lo);
    CHECK(r <= hi);
  }
  CHECK(stats.empirical_cp >= 1.0);
  CHECK(stats.empirical_cp <= std::max(hi, 1.0 / lo));
  CHECK_THROWS_AS(lp_equivalence_stats(bank, {}, 2.0), std::invalid_argument);
  std::vector<GroupSignal> zeros{GroupSignal::zeros(s.group)};
  CHECK_THROWS_AS(lp_equivalence_stats(bank, zeros, 2.0), std::invalid_argument);
}
