// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Groups are sized so the whole run stays far under the five-minute budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpbesov/besov.hpp"
#include "lpbesov/calculus.hpp"
#include "lpbesov/ensemble.hpp"
#include "lpbesov/estimates.hpp"
#include "lpbesov/filter_bank.hpp"
#include "lpbesov/group.hpp"
#include "lpbesov/multiplier.hpp"
#include "lpbesov/signal.hpp"

using namespace lpbesov;

namespace {

int g_failures = 0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void report(int k, const std::string& name, bool pass, const std::string& detail) {
  std::printf("AC%-2d %s  %s: %s\n", k, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Bench {
  CayleyGroup group;
  WordMetric metric;
  GrowthProfile growth;
  SubLaplacian lap;
  SpectralEngine engine;

  explicit Bench(const GroupSpec& spec)
      : group(CayleyGroup::build(spec)),
        metric(word_metric(group)),
        growth(growth_profile(metric)),
        lap(group),
        engine(lap) {}
};

GroupSpec torus(int modulus, int dimension) {
  GroupSpec s;
  s.family = GroupFamily::torus;
  s.modulus = modulus;
  s.dimension = dimension;
  return s;
}

GroupSpec heisenberg(int modulus) {
  GroupSpec s;
  s.family = GroupFamily::heisenberg;
  s.modulus = modulus;
  return s;
}

// AC1: the dyadic cutoffs telescope to a partition of unity.
void ac1() {
  const Multiplier phi = Multiplier::cutoff_phi();
  const Multiplier psi = Multiplier::psi();
  const int N = 12;
  double max_err = 0.0;
  for (double lam : log_grid(1e-6, 1e6, 1000)) {
    double sum = phi(lam);
    double scale = 1.0;
    for (int j = 0; j <= N; ++j) {
      sum += psi(scale * lam);
      scale *= 0.25;
    }
    max_err = std::max(max_err, std::abs(sum - phi(scale * lam)));
  }
  report(1, "telescoping partition of unity", max_err <= 1e-12,
         "max error " + fmt(max_err) + " over 1000 log points, N=12 (bound 1e-12)");
}

double worst_reconstruction(const FilterBank& bank, const std::vector<GroupSignal>& ens) {
  double worst = 0.0;
  for (const GroupSignal& u : ens)
    worst = std::max(worst, decompose(bank, u).reconstruction_error);
  return worst;
}

// AC2: decompose-then-sum returns the input on every group family.
void ac2(Bench& z64, Bench& z32sq, Bench& heis8) {
  bool pass = true;
  std::string detail;
  for (Bench* b : {&z64, &z32sq, &heis8}) {
    FilterBank bank(b->engine, ApplyMethod::kExact, 1e-8, 2000);
    const double worst =
        worst_reconstruction(bank, gaussian_ensemble(b->group, 100, 2024));
    pass = pass && worst <= 1e-10;
    if (!detail.empty()) detail += "; ";
    detail += b->group.spec().label() + " " + fmt(worst);
  }
  FilterBank cheb(z64.engine, ApplyMethod::kChebyshev, 1e-8, 2000);
  const double worst_cheb =
      worst_reconstruction(cheb, gaussian_ensemble(z64.group, 100, 2024));
  pass = pass && worst_cheb <= 1e-6;
  detail += "; chebyshev on " + z64.group.spec().label() + " " + fmt(worst_cheb);
  report(2, "reconstruction over 100-signal ensembles", pass,
         detail + " (bounds 1e-10 exact, 1e-6 chebyshev)");
}

// AC3: the polynomial path stays within its own certificate of the dense path.
void ac3(Bench& z64, Bench& z32sq, Bench& heis8) {
  const std::vector<Multiplier> ms = {Multiplier::cutoff_phi(), Multiplier::psi(),
                                      Multiplier::heat(), Multiplier::heat_power(2.0)};
  bool pass = true;
  double worst_gap = 0.0, worst_cert = 0.0;
  for (Bench* b : {&z64, &z32sq, &heis8}) {
    const GroupSignal probe = gaussian_ensemble(b->group, 1, 31).front();
    const int J = saturation_scale(b->lap.lambda_max());
    for (const Multiplier& m : ms) {
      for (int j = 0; j <= J; ++j) {
        const double t = std::pow(0.25, j);
        AppliedResult cheb =
            apply_multiplier(b->engine, m, t, probe, ApplyMethod::kChebyshev, 1e-10, 2000);
        AppliedResult exact = apply_multiplier(b->engine, m, t, probe, ApplyMethod::kExact);
        const double gap =
            (cheb.signal.values - exact.signal.values).norm() / probe.values.norm();
        const double allowed =
            cheb.info.certified_error + exact.info.certified_error + 1e-12;
        worst_gap = std::max(worst_gap, gap);
        worst_cert = std::max(worst_cert, cheb.info.certified_error);
        pass = pass && gap <= allowed && cheb.info.certified_error <= 1e-8;
      }
    }
  }
  report(3, "chebyshev filters honor their certificates", pass,
         "max gap " + fmt(worst_gap) + ", max certificate " + fmt(worst_cert) +
             " (certificate bound 1e-8)");
}

// AC4: heat kernel mass, positivity, and the semigroup law.
void ac4(Bench& z128, Bench& heis8) {
  bool pass = true;
  double worst_mass = 0.0, worst_min = 0.0, worst_semi = 0.0;
  for (Bench* b : {&z128, &heis8}) {
    for (double t : {0.25, 1.0, 4.0, 16.0}) {
      const GroupSignal pt = heat_kernel(b->engine, t, ApplyMethod::kExact);
      worst_mass = std::max(worst_mass, std::abs(pt.values.sum() - 1.0));
      worst_min = std::min(worst_min, pt.values.minCoeff());
    }
    for (auto [t1, t2] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.0, 2.0}}) {
      GroupSignal conv = convolve(heat_kernel(b->engine, t1, ApplyMethod::kExact),
                                  heat_kernel(b->engine, t2, ApplyMethod::kExact));
      conv.values -= heat_kernel(b->engine, t1 + t2, ApplyMethod::kExact).values;
      worst_semi = std::max(worst_semi, lp_norm(conv, 1.0));
    }
  }
  pass = worst_mass <= 1e-12 && worst_min >= -1e-12 && worst_semi <= 1e-10;
  report(4, "heat kernel laws", pass,
         "mass error " + fmt(worst_mass) + ", min entry " + fmt(worst_min) +
             ", semigroup l1 error " + fmt(worst_semi) +
             " (bounds 1e-12 / -1e-12 / 1e-10)");
}

// AC5: band-kernel l1 norms are flat across scales, both spectral paths.
void ac5(Bench& z256, Bench& z64sq) {
  FilterBank exact(z256.engine, ApplyMethod::kExact, 1e-8, 2000);
  FilterBank cheb(z64sq.engine, ApplyMethod::kChebyshev, 1e-8, 2000);
  const double a = block_l1_profile(exact).max_over_median;
  const double b = block_l1_profile(cheb).max_over_median;
  report(5, "band kernels stay l1-flat across scales", a <= 2.0 && b <= 2.0,
         z256.group.spec().label() + " max/median " + fmt(a) + ", " + z64sq.group.spec().label() + " " +
             fmt(b) + " (bound 2)");
}

// AC6: the square function is an l2 isometry up to fixed constants, and the
// fitted constant is stable under ensemble doubling at p != 2.
void ac6(Bench& z64, Bench& z32sq, Bench& heis8) {
  const double lo = 1.0 / std::sqrt(6.0) - 0.01;
  const double hi = std::sqrt(2.0) + 0.01;
  bool pass = true;
  double rmin = kInfinity, rmax = 0.0;
  for (Bench* b : {&z64, &z32sq, &heis8}) {
    FilterBank bank(b->engine, ApplyMethod::kExact, 1e-8, 2000);
    const LpStats s = lp_equivalence_stats(bank, gaussian_ensemble(b->group, 200, 77), 2.0);
    for (double r : s.ratios) {
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  }
  pass = rmin >= lo && rmax <= hi;
  std::string detail = "p=2 ratios in [" + fmt(rmin) + ", " + fmt(rmax) + "] over 600 signals";

  FilterBank bank(z64.engine, ApplyMethod::kExact, 1e-8, 2000);
  const std::vector<GroupSignal> base = gaussian_ensemble(z64.group, 200, 77);
  const std::vector<GroupSignal> doubled = gaussian_ensemble(z64.group, 400, 77);
  for (double p : {1.5, 4.0}) {
    const double c1 = lp_equivalence_stats(bank, base, p).empirical_cp;
    const double c2 = lp_equivalence_stats(bank, doubled, p).empirical_cp;
    const double change = std::abs(c2 - c1) / c1;
    pass = pass && std::isfinite(c1) && change < 0.20;
    detail += "; p=" + fmt(p) + " doubling change " + fmt(100.0 * change) + "%";
  }
  report(6, "square-function window and stability", pass,
         detail + " (window [" + fmt(lo) + ", " + fmt(hi) + "], change bound 20%)");
}

// AC7: dyadic and heat Besov norms agree within a bounded spread, and the
// spread does not blow up as the group grows.
void ac7(Bench& z16, Bench& z32, Bench& z64) {
  const std::vector<BesovParams> params = {{1.0, 2.0, 2.0, 2.0},
                                           {0.5, 2.0, 1.0, 2.0},
                                           {-1.0, 2.0, 2.0, 1.0},
                                           {1.0, kInfinity, kInfinity, 2.0}};
  bool pass = true;
  std::string detail;
  std::vector<std::vector<double>> spreads(params.size());
  for (Bench* b : {&z16, &z32, &z64}) {
    FilterBank bank(b->engine, ApplyMethod::kExact, 1e-8, 2000);
    const std::vector<BesovComparison> rep = besov_equivalence_report(
        bank, b->engine, gaussian_ensemble(b->group, 100, 11), params, ApplyMethod::kExact);
    for (size_t k = 0; k < rep.size(); ++k) {
      pass = pass && std::isfinite(rep[k].spread) && rep[k].spread <= 10.0;
      spreads[k].push_back(rep[k].spread);
    }
  }
  for (size_t k = 0; k < params.size(); ++k) {
    double worst_change = 1.0;
    for (size_t i = 0; i + 1 < spreads[k].size(); ++i) {
      const double hi = std::max(spreads[k][i], spreads[k][i + 1]);
      const double lo = std::min(spreads[k][i], spreads[k][i + 1]);
      worst_change = std::max(worst_change, hi / lo);
    }
    pass = pass && worst_change < 2.0;
    if (!detail.empty()) detail += "; ";
    detail += params[k].label() + " spreads " + fmt(spreads[k][0]) + "/" +
              fmt(spreads[k][1]) + "/" + fmt(spreads[k][2]);
  }
  report(7, "besov norm equivalence across group sizes", pass,
         detail + " (spread bound 10, growth bound 2x)");
}

// AC8: band-block inequalities are scale-exact: the demanded constant shows
// no trend across scales for a point-mass probe.
void ac8(Bench& z128) {
  if (!z128.growth.local_dimension) {
    report(8, "bernstein ratios are flat across scales", false, "no growth fit available");
    return;
  }
  const double d_loc = *z128.growth.local_dimension;
  FilterBank bank(z128.engine, ApplyMethod::kExact, 1e-8, 2000);
  const GroupSignal probe = GroupSignal::delta(z128.group, z128.group.identity());
  struct Tuple {
    std::vector<int> word;
    double sigma, p, q;
  };
  const std::vector<Tuple> tuples = {
      {{0}, 0.0, 1.0, 2.0}, {{}, 1.0, 2.0, 2.0}, {{}, -1.0, 2.0, 2.0},
      {{0}, 0.0, 2.0, kInfinity}};
  bool pass = true;
  std::string detail;
  for (const Tuple& tup : tuples) {
    const BernsteinTrend trend =
        bernstein_trend(bank, probe, tup.word, tup.sigma, tup.p, tup.q, d_loc);
    const bool ok = trend.rows.size() >= 2 && std::isfinite(trend.log10_slope) &&
                    std::abs(trend.log10_slope) <= 0.15;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += "(|I|=" + std::to_string(tup.word.size()) + ",s=" + fmt(tup.sigma) + ",p=" +
              fmt(tup.p) + ",q=" + fmt(tup.q) + ") slope " + fmt(trend.log10_slope);
  }
  report(8, "bernstein ratios are flat across scales", pass, detail + " (bound 0.15)");
}

// AC9: fitted volume-growth exponents recover the known dimensions.
void ac9(Bench& z128, Bench& z32sq, Bench& heis16) {
  bool pass = true;
  std::string detail;
  for (Bench* b : {&z128, &z32sq}) {
    const double target = (b == &z128) ? 1.0 : 2.0;
    const bool have = b->growth.global_dimension.has_value();
    const double fit = have ? *b->growth.global_dimension : 0.0;
    pass = pass && have && std::abs(fit - target) <= 0.1 * target;
    if (!detail.empty()) detail += "; ";
    detail += b->group.spec().label() + " fit " + fmt(fit) + " vs " + fmt(target);
  }
  const bool have = heis16.growth.global_dimension.has_value();
  const double fit = have ? *heis16.growth.global_dimension : 0.0;
  pass = pass && have && fit >= 3.6 && fit <= 4.4;
  detail += "; " + heis16.group.spec().label() + " fit " + fmt(fit) + " vs homogeneous 4";
  report(9, "growth exponents match the model dimensions", pass,
         detail + " (10% torus, [3.6, 4.4] heisenberg)");
}

// AC10: one constant serves the gaussian upper bound across a 64x range of t.
void ac10(Bench& z128) {
  const GaussianFit fit = check_gaussian_bound(z128.engine, z128.metric, z128.growth,
                                               {0.25, 1.0, 4.0, 16.0}, {},
                                               ApplyMethod::kExact);
  report(10, "gaussian envelope constant is scale-stable", fit.span < 4.0,
         "C(t) span " + fmt(fit.span) + " over t in {0.25,...,16} (bound 4)");
}

// AC11: wave propagation from a point mass respects the metric light cone.
void ac11(Bench& z128) {
  const GroupSignal delta = GroupSignal::delta(z128.group, z128.group.identity());
  bool pass = true;
  std::string detail;
  for (double s : {1.0, 2.0, 4.0}) {
    const int radius = static_cast<int>(std::ceil(s * std::sqrt(z128.lap.lambda_max()))) + 2;
    const GroupSignal w = wave_cosine(z128.engine, s, delta, ApplyMethod::kExact).signal;
    double outside = 0.0;
    for (int x = 0; x < w.size(); ++x)
      if (z128.metric.dist[x] > radius) outside += std::abs(w[x]);
    pass = pass && outside <= 1e-6;
    if (!detail.empty()) detail += "; ";
    detail += "s=" + fmt(s) + " outside mass " + fmt(outside);
  }
  report(11, "finite propagation speed of the wave flow", pass, detail + " (bound 1e-6)");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Bench z16(torus(16, 1)), z32(torus(32, 1)), z64(torus(64, 1));
    Bench z128(torus(128, 1)), z256(torus(256, 1));
    Bench z32sq(torus(32, 2)), z64sq(torus(64, 2));
    Bench heis8(heisenberg(8)), heis16(heisenberg(16));

    ac1();
    ac2(z64, z32sq, heis8);
    ac3(z64, z32sq, heis8);
    ac4(z128, heis8);
    ac5(z256, z64sq);
    ac6(z64, z32sq, heis8);
    ac7(z16, z32, z64);
    ac8(z128);
    ac9(z128, z32sq, heis16);
    ac10(z128);
    ac11(z128);
  } catch (const std::exception& e) {
    std::printf("ACCEPTANCE ERROR: %s\n", e.what());
    return 1;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("ACCEPTANCE: %d/11 criteria passed in %.1f s\n", 11 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
