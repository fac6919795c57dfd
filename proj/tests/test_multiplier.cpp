#include "doctest.h"

#include <cmath>

#include "lpbesov/multiplier.hpp"

using namespace lpbesov;

TEST_CASE("jet arithmetic reproduces textbook Taylor coefficients") {
  // (1 + x)^2 at x0 = 1: value 4, first derivative 4, second derivative 2.
  Jet x = Jet::variable(1.0, 4);
  Jet sq = (x + 1.0) * (x + 1.0);
  CHECK(sq.value() == doctest::Approx(4.0));
  CHECK(sq.derivative(1) == doctest::Approx(4.0));
  CHECK(sq.derivative(2) == doctest::Approx(2.0));
  CHECK(sq.derivative(3) == doctest::Approx(0.0));

  // 1/(1+x) at 0: coefficients (-1)^k.
  Jet inv = Jet::constant(1.0, 6) / (Jet::variable(0.0, 6) + 1.0);
  for (int k = 0; k <= 6; ++k) CHECK(inv.coeff(k) == doctest::Approx(k % 2 ? -1.0 : 1.0));

  // exp: every derivative of e^{-x} at x0 is (-1)^r e^{-x0}.
  Jet e = exp(-Jet::variable(0.7, 5));
  for (int r = 0; r <= 5; ++r)
    CHECK(e.derivative(r) == doctest::Approx(std::pow(-1.0, r) * std::exp(-0.7)).epsilon(1e-14));

  // sqrt(4 + x) at 0: c0 = 2, c1 = 1/4, c2 = -1/64.
  Jet rt = pow(Jet::variable(0.0, 3) + 4.0, 0.5);
  CHECK(rt.coeff(0) == doctest::Approx(2.0));
  CHECK(rt.coeff(1) == doctest::Approx(0.25));
  CHECK(rt.coeff(2) == doctest::Approx(-1.0 / 64.0));

  CHECK_THROWS_AS(pow(Jet::constant(-1.0, 2), 0.5), std::domain_error);
  CHECK_THROWS_AS(Jet::constant(1.0, 2) / Jet::constant(0.0, 2), std::domain_error);
}

TEST_CASE("cutoff is one below 1/4, zero above 1, and 1/2 at 5/8") {
  auto phi = Multiplier::cutoff_phi();
  for (double l : {0.0, 1e-6, 0.1, 0.25}) CHECK(phi(l) == doctest::Approx(1.0).epsilon(1e-15));
  for (double l : {1.0, 1.5, 10.0, 1e8}) CHECK(phi(l) == doctest::Approx(0.0).epsilon(1e-15));
  // At 5/8 the two bump factors coincide, so the ratio is exactly 1/2.
  CHECK(phi(0.625) == doctest::Approx(0.5).epsilon(1e-15));
  // Strictly decreasing across the transition band.
  double prev = phi(0.26);
  for (double l = 0.30; l < 1.0; l += 0.04) {
    const double cur = phi(l);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("band function takes its designed values") {
  auto psi = Multiplier::psi();
  CHECK(psi(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi(2.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(psi(0.25) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(psi(4.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(psi(0.2) == 0.0);
  CHECK(psi(4.3) == 0.0);
  for (double l : log_grid(1e-6, 1e6, 500)) {
    CHECK(psi(l) >= 0.0);
    CHECK(psi(l) <= 1.0 + 1e-15);
  }
  REQUIRE(psi.support_hint().has_value());
  CHECK(psi.support_hint()->first == doctest::Approx(0.25));
  CHECK(psi.support_hint()->second == doctest::Approx(4.0));
}

TEST_CASE("wider cutoffs reproduce the sharp ones on their support") {
  auto phi = Multiplier::cutoff_phi();
  auto psi = Multiplier::psi();
  auto tphi = Multiplier::tilde_phi();
  auto tpsi = Multiplier::tilde_psi();
  for (double l : log_grid(1e-8, 1e3, 800)) {
    CHECK(std::abs(tphi(l) * phi(l) - phi(l)) <= 1e-15);
    CHECK(std::abs(tpsi(l) * psi(l) - psi(l)) <= 1e-15);
  }
}

TEST_CASE("dyadic partition telescopes to the stretched cutoff") {
  CHECK(telescope_check(12, log_grid(1e-6, 1e6, 1000)) <= 1e-12);
  CHECK(telescope_check(3, log_grid(1e-4, 1e2, 300)) <= 1e-12);
}

TEST_CASE("multiplier derivatives agree with central finite differences") {
  auto phi = Multiplier::cutoff_phi();
  const double h = 1e-5;
  for (double l = 0.3; l <= 0.9; l += 0.1) {
    const double fd1 = (phi(l + h) - phi(l - h)) / (2 * h);
    CHECK(phi.derivative(1, l) == doctest::Approx(fd1).epsilon(1e-6));
    const double fd2 = (phi(l + h) - 2 * phi(l) + phi(l - h)) / (h * h);
    CHECK(phi.derivative(2, l) == doctest::Approx(fd2).epsilon(1e-4));
  }
  auto heat = Multiplier::heat();
  for (int r = 0; r <= 6; ++r)
    CHECK(heat.derivative(r, 0.7) ==
          doctest::Approx(std::pow(-1.0, r) * std::exp(-0.7)).epsilon(1e-14));
}

TEST_CASE("regularity norms reproduce closed-form suprema") {
  // Constant one with n = 0: sup |m| = 1.
  auto norm1 = multiplier_norm(Multiplier::one(), 0);
  CHECK(norm1.value == doctest::Approx(1.0).epsilon(1e-12));

  // Heat with n = 1: (1+l)e^{-l} is maximal at l -> 0 with value 1.
  auto normh = multiplier_norm(Multiplier::heat(), 1);
  CHECK(normh.value == doctest::Approx(1.0).epsilon(1e-6));

  // l e^{-l} with n = 0 peaks at l = 1 with value 1/e.
  auto normp = multiplier_norm(Multiplier::heat_power(2.0), 0);
  CHECK(normp.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(normp.arg_lambda == doctest::Approx(1.0).epsilon(1e-3));

  // Scale-invariant version of heat at n = 1: max(sup e^-l, sup l e^-l) = 1.
  auto si = scale_invariant_norm(Multiplier::heat(), 1);
  CHECK(si.value == doctest::Approx(1.0).epsilon(1e-6));

  // Band norms are finite, positive, and grow with the order.
  auto b2 = multiplier_norm(Multiplier::psi(), 2);
  auto b4 = multiplier_norm(Multiplier::psi(), 4);
  CHECK(b2.value > 1.0);
  CHECK(b4.value >= b2.value);
  CHECK(std::isfinite(b4.value));
}

TEST_CASE("scaling moves the argument and the support hint") {
  auto psi = Multiplier::psi();
  auto scaled = psi.scaled(0.25);  // l -> psi(l/4)
  CHECK(scaled(4.0) == doctest::Approx(psi(1.0)).epsilon(1e-15));
  CHECK(scaled(10.0) == doctest::Approx(psi(2.5)).epsilon(1e-15));
  REQUIRE(scaled.support_hint().has_value());
  CHECK(scaled.support_hint()->first == doctest::Approx(1.0));
  CHECK(scaled.support_hint()->second == doctest::Approx(16.0));
}

TEST_CASE("multiplier factory parses the full catalogue") {
  for (const char* name : {"phi", "psi", "tilde_phi", "tilde_psi", "heat", "one"})
    CHECK_NOTHROW(Multiplier::from_name(name));
  auto hp = Multiplier::from_name("heat_power(2)");
  CHECK(hp(1.0) == doctest::Approx(std::exp(-1.0)));
  auto hp3 = Multiplier::from_name("heat_power(1.5)");
  CHECK(hp3(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(hp3(4.0) == doctest::Approx(std::pow(4.0, 0.75) * std::exp(-4.0)));
  CHECK_THROWS_AS(Multiplier::from_name("hat"), std::invalid_argument);
  CHECK_THROWS_AS(Multiplier::from_name("heat_power(x)"), std::invalid_argument);
}

TEST_CASE("derived band equals difference of rescaled cutoffs") {
  auto phi = Multiplier::cutoff_phi();
  auto psi = psi_from_phi(phi);
  auto ref = Multiplier::psi();
  for (double l : log_grid(1e-4, 1e3, 400)) CHECK(psi(l) == doctest::Approx(ref(l)).epsilon(1e-15));
}
