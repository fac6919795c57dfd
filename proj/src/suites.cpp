#include "lpbesov/suites.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "lpbesov/besov.hpp"
#include "lpbesov/ensemble.hpp"
#include "lpbesov/estimates.hpp"
#include "lpbesov/filter_bank.hpp"
#include "lpbesov/io_util.hpp"

namespace lpbesov {

namespace {

using nlohmann::ordered_json;

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string path_join(const std::string& a, const std::string& b) { return a + "/" + b; }

/// Generator words rendered with 1-based indices, pipe separated ("" = empty).
std::string word_label(const std::vector<int>& word) {
  std::string s;
  for (size_t i = 0; i < word.size(); ++i)
    s += (i ? "|" : "") + std::to_string(word[i] + 1);
  return s;
}

struct Workbench {
  CayleyGroup group;
  WordMetric metric;
  GrowthProfile growth;
  SubLaplacian lap;
  SpectralEngine engine;

  explicit Workbench(const ExperimentConfig& cfg)
      : group(CayleyGroup::build(cfg.group)),
        metric(word_metric(group)),
        growth(growth_profile(metric)),
        lap(group),
        engine(lap) {}
};

std::vector<GroupSignal> build_ensemble(const Workbench& wb, const ExperimentConfig& cfg,
                                        int gaussian_count) {
  std::vector<GroupSignal> ens =
      gaussian_ensemble(wb.group, gaussian_count, cfg.ensemble.seed);
  const SpectralEngine* engine_ptr = wb.engine.dense_available() ? &wb.engine : nullptr;
  for (GroupSignal& s : structured_ensemble(wb.group, wb.metric, engine_ptr))
    ens.push_back(std::move(s));
  return ens;
}

void add_criterion(SuiteResult& res, const std::string& name, bool pass,
                   const std::string& detail) {
  res.criteria.push_back(CriterionResult{name, pass, detail});
}

void emit(SuiteResult& res, const std::string& out_root, const std::string& rel,
          const std::string& content) {
  write_text_file(path_join(out_root, rel), content);
  res.files.push_back(rel);
}

void emit_csv(SuiteResult& res, const std::string& out_root, const std::string& rel,
              const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  write_csv(path_join(out_root, rel), header, rows);
  res.files.push_back(rel);
}

// ---------------------------------------------------------------------------
// growth

void suite_growth(const ExperimentConfig& cfg, const std::string& out_root, SuiteResult& res) {
  Workbench wb(cfg);

  std::vector<std::vector<std::string>> rows;
  for (int r = 0; r <= wb.metric.r_max; ++r)
    rows.push_back({std::to_string(r), std::to_string(wb.metric.volume(r))});
  emit_csv(res, out_root, "growth/volumes.csv", {"radius", "volume"}, rows);

  ordered_json j;
  j["group"] = cfg.group.label();
  j["r_max"] = wb.metric.r_max;
  j["local_dimension"] =
      wb.growth.local_dimension ? ordered_json(*wb.growth.local_dimension) : ordered_json();
  j["global_dimension"] =
      wb.growth.global_dimension ? ordered_json(*wb.growth.global_dimension) : ordered_json();
  j["doubling_constant"] = wb.growth.doubling_constant;
  j["smoothing_order"] = wb.growth.smoothing_order;
  j["small_window"] = {wb.growth.small_window.r_lo, wb.growth.small_window.r_hi};
  j["large_window"] = {wb.growth.large_window.r_lo, wb.growth.large_window.r_hi};
  j["sufficient_range"] = wb.growth.sufficient_range;
  emit(res, out_root, "growth/growth.json", j.dump(2) + "\n");

  SvgSeries volumes{"V(r)", {}, {}};
  for (int r = 1; r <= wb.metric.r_max; ++r) {
    volumes.x.push_back(r);
    volumes.y.push_back(static_cast<double>(wb.metric.volume(r)));
  }
  emit(res, out_root, "growth/volumes.svg",
       svg_chart("Ball volume growth on " + cfg.group.label(), "radius", "V(r)", {volumes},
                 /*log_y=*/true));

  const bool torus = cfg.group.family == GroupFamily::torus;
  const double target = torus ? static_cast<double>(cfg.group.dimension) : 4.0;
  if (!wb.growth.global_dimension) {
    add_criterion(res, "growth-exponents", false,
                  "metric range too short for a mid-radius fit (r_max = " +
                      std::to_string(wb.metric.r_max) + ")");
  } else {
    const double fit = *wb.growth.global_dimension;
    const bool ok = std::abs(fit - target) <= 0.1 * target;
    std::string detail = "mid-radius fit " + fmt6(fit) + " vs nominal " + fmt6(target) +
                         " (tolerance 10%)";
    if (wb.growth.local_dimension)
      detail += "; small-radius fit " + fmt6(*wb.growth.local_dimension);
    add_criterion(res, "growth-exponents", ok, detail);
  }
}

// ---------------------------------------------------------------------------
// lp-check

void suite_lp_check(const ExperimentConfig& cfg, const std::string& out_root,
                    SuiteResult& res) {
  // Partition-of-unity telescope over a wide log grid.
  {
    const int N = 12;
    const Multiplier phi = Multiplier::cutoff_phi();
    const Multiplier psi = Multiplier::psi();
    const std::vector<double> grid = log_grid(1e-6, 1e6, 1000);
    std::vector<std::vector<std::string>> rows;
    double max_err = 0.0;
    for (double lam : grid) {
      double sum = phi(lam);
      double scale = 1.0;
      for (int j = 0; j <= N; ++j) {
        sum += psi(scale * lam);
        scale *= 0.25;
      }
      const double err = std::abs(sum - phi(scale * lam));
      max_err = std::max(max_err, err);
      rows.push_back({format_double(lam), format_double(err)});
    }
    emit_csv(res, out_root, "lp-check/telescope.csv", {"lambda", "error"}, rows);
    add_criterion(res, "telescoping-identity", max_err <= 1e-12,
                  "max error " + fmt6(max_err) + " over 1000 points, N = 12 (bound 1e-12)");
  }

  Workbench wb(cfg);
  FilterBank bank(wb.engine, cfg.method, cfg.tolerance, cfg.max_degree);
  const bool exact = bank.method() == ApplyMethod::kExact;
  const std::vector<GroupSignal> ensemble = build_ensemble(wb, cfg, cfg.ensemble.size);

  // Reconstruction u = S0 u + sum_j Delta_j u over the whole ensemble.
  {
    double worst = 0.0;
    std::vector<Decomposition> first;
    for (size_t i = 0; i < ensemble.size(); ++i) {
      Decomposition dec = decompose(bank, ensemble[i]);
      worst = std::max(worst, dec.reconstruction_error);
      if (i == 0) first.push_back(std::move(dec));
    }
    const double bound = exact ? 1e-10 : 1e-6;
    add_criterion(res, "reconstruction", worst <= bound,
                  "max relative l2 error " + fmt6(worst) + " over " +
                      std::to_string(ensemble.size()) + " signals (" +
                      to_string(bank.method()) + " bound " + fmt6(bound) + ")");

    // Block dump and block-norm chart for the first signal.
    const Decomposition& dec = first.front();
    std::vector<std::vector<std::string>> s0_rows;
    for (int x = 0; x < dec.s0.size(); ++x)
      s0_rows.push_back({std::to_string(x), format_double(dec.s0[x])});
    emit_csv(res, out_root, "lp-check/u0_s0.csv", {"element_index", "value"}, s0_rows);
    SvgSeries norms{"||Delta_j u0||_2", {}, {}};
    for (size_t j = 0; j < dec.blocks.size(); ++j) {
      std::vector<std::vector<std::string>> block_rows;
      for (int x = 0; x < dec.blocks[j].size(); ++x)
        block_rows.push_back({std::to_string(x), format_double(dec.blocks[j][x])});
      emit_csv(res, out_root, "lp-check/u0_delta" + std::to_string(j) + ".csv",
               {"element_index", "value"}, block_rows);
      norms.x.push_back(static_cast<double>(j));
      norms.y.push_back(lp_norm(dec.blocks[j], 2.0));
    }
    emit(res, out_root, "lp-check/u0_block_norms.svg",
         svg_chart("Block l2 norms of the first probe", "scale j", "norm", {norms}));
  }

  // Square-function window at p = 2 and stability at p in {1.5, 4}.
  {
    const double lo = 1.0 / std::sqrt(6.0) - 0.01;
    const double hi = std::sqrt(2.0) + 0.01;
    LpStats base = lp_equivalence_stats(bank, ensemble, 2.0);
    double rmin = kInfinity, rmax = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < base.ratios.size(); ++i) {
      rmin = std::min(rmin, base.ratios[i]);
      rmax = std::max(rmax, base.ratios[i]);
      rows.push_back({std::to_string(i), format_double(2.0), format_double(base.ratios[i])});
    }
    add_criterion(res, "lp-window", rmin >= lo && rmax <= hi,
                  "p=2 ratios in [" + fmt6(rmin) + ", " + fmt6(rmax) + "], window [" +
                      fmt6(lo) + ", " + fmt6(hi) + "]");

    ordered_json stats;
    stats["seed"] = cfg.ensemble.seed;
    stats["p2"] = {{"empirical_cp", base.empirical_cp}};
    bool stable = true;
    std::string detail;
    const std::vector<GroupSignal> doubled = build_ensemble(wb, cfg, 2 * cfg.ensemble.size);
    for (double p : {1.5, 4.0}) {
      LpStats s1 = lp_equivalence_stats(bank, ensemble, p);
      LpStats s2 = lp_equivalence_stats(bank, doubled, p);
      for (size_t i = 0; i < s1.ratios.size(); ++i)
        rows.push_back({std::to_string(i), format_double(p), format_double(s1.ratios[i])});
      const double change = std::abs(s2.empirical_cp - s1.empirical_cp) / s1.empirical_cp;
      stable = stable && std::isfinite(s1.empirical_cp) && change < 0.20;
      if (!detail.empty()) detail += "; ";
      detail += "p=" + fmt6(p) + ": C=" + fmt6(s1.empirical_cp) + ", doubled-ensemble change " +
                fmt6(100.0 * change) + "%";
      stats["p" + fmt6(p)] = {{"empirical_cp", s1.empirical_cp},
                              {"empirical_cp_doubled", s2.empirical_cp},
                              {"relative_change", change}};
    }
    emit_csv(res, out_root, "lp-check/ratios.csv", {"signal", "p", "ratio"}, rows);
    emit(res, out_root, "lp-check/stats.json", stats.dump(2) + "\n");
    add_criterion(res, "lp-stability", stable, detail);
  }

  // Polynomial filters against the dense-path oracle (small groups only).
  if (wb.engine.dense_available() && wb.group.size() <= 2048) {
    const std::vector<Multiplier> ms = {Multiplier::cutoff_phi(), Multiplier::psi(),
                                        Multiplier::heat(), Multiplier::heat_power(2.0)};
    const GroupSignal probe = ensemble.front();
    double worst_gap = 0.0, worst_cert = 0.0;
    int violations = 0;
    for (const Multiplier& m : ms) {
      for (int j = 0; j <= bank.top_scale(); ++j) {
        const double t = bank.scale(j);
        AppliedResult cheb = apply_multiplier(wb.engine, m, t, probe, ApplyMethod::kChebyshev,
                                              cfg.tolerance, cfg.max_degree);
        AppliedResult ex = apply_multiplier(wb.engine, m, t, probe, ApplyMethod::kExact);
        const double gap =
            (cheb.signal.values - ex.signal.values).norm() / probe.values.norm();
        worst_gap = std::max(worst_gap, gap);
        worst_cert = std::max(worst_cert, cheb.info.certified_error);
        if (gap > cheb.info.certified_error) ++violations;
      }
    }
    add_criterion(res, "chebyshev-oracle",
                  violations == 0 && worst_cert <= 1e-8,
                  "max discrepancy " + fmt6(worst_gap) + ", max certificate " +
                      fmt6(worst_cert) + ", certificate violations " +
                      std::to_string(violations));
  }
}

// ---------------------------------------------------------------------------
// besov-compare

void suite_besov(const ExperimentConfig& cfg, const std::string& out_root, SuiteResult& res) {
  Workbench wb(cfg);
  FilterBank bank(wb.engine, cfg.method, cfg.tolerance, cfg.max_degree);
  const std::vector<GroupSignal> ensemble = build_ensemble(wb, cfg, cfg.ensemble.size);

  const std::vector<BesovComparison> report =
      besov_equivalence_report(bank, wb.engine, ensemble, cfg.besov_params, cfg.method);

  std::vector<std::vector<std::string>> rows;
  ordered_json spread_json;
  spread_json["seed"] = cfg.ensemble.seed;
  spread_json["heat_grid"] = default_heat_grid(bank.top_scale());
  bool all_ok = true;
  std::string detail;
  SvgSeries spreads{"spread", {}, {}};
  for (size_t k = 0; k < report.size(); ++k) {
    const BesovComparison& cmp = report[k];
    for (const BesovRatioRow& row : cmp.rows) {
      rows.push_back({format_double(cmp.params.s), format_double(cmp.params.p),
                      format_double(cmp.params.q), format_double(cmp.params.m),
                      std::to_string(row.signal_index), format_double(row.dyadic),
                      format_double(row.heat), format_double(row.ratio)});
    }
    spread_json[cmp.params.label()] = {{"min_ratio", cmp.min_ratio},
                                       {"max_ratio", cmp.max_ratio},
                                       {"spread", cmp.spread}};
    all_ok = all_ok && std::isfinite(cmp.spread) && cmp.spread <= 10.0;
    if (!detail.empty()) detail += "; ";
    detail += cmp.params.label() + ": spread " + fmt6(cmp.spread);
    spreads.x.push_back(static_cast<double>(k));
    spreads.y.push_back(cmp.spread);
  }
  emit_csv(res, out_root, "besov-compare/ratios.csv",
           {"s", "p", "q", "m", "signal", "dyadic", "heat", "ratio"}, rows);
  emit(res, out_root, "besov-compare/spread.json", spread_json.dump(2) + "\n");
  emit(res, out_root, "besov-compare/spread.svg",
       svg_chart("Dyadic/heat norm ratio spread per parameter set", "parameter set index",
                 "spread", {spreads}));
  add_criterion(res, "besov-spread", all_ok, detail + " (bound 10)");
}

// ---------------------------------------------------------------------------
// bernstein

void suite_bernstein(const ExperimentConfig& cfg, const std::string& out_root,
                     SuiteResult& res) {
  Workbench wb(cfg);
  if (!wb.growth.local_dimension)
    throw std::runtime_error("bernstein ratios need a fitted local dimension");
  const double d_loc = *wb.growth.local_dimension;
  FilterBank bank(wb.engine, cfg.method, cfg.tolerance, cfg.max_degree);

  std::vector<GroupSignal> probes;
  probes.push_back(GroupSignal::delta(wb.group, wb.group.identity()));
  const int extra = std::min(3, cfg.ensemble.size);
  for (GroupSignal& g : gaussian_ensemble(wb.group, extra, cfg.ensemble.seed))
    probes.push_back(std::move(g));

  std::vector<std::vector<std::string>> rows;
  std::vector<SvgSeries> chart;
  ordered_json slopes;
  bool all_ok = true;
  std::string detail;
  for (const BernsteinTupleConfig& tup : cfg.bernstein_tuples) {
    const std::string label = "I=(" + word_label(tup.word) + ") sigma=" + fmt6(tup.sigma) +
                              " p=" + fmt6(tup.p) + " q=" + fmt6(tup.q);
    BernsteinTrend head;
    for (size_t u = 0; u < probes.size(); ++u) {
      BernsteinTrend trend =
          bernstein_trend(bank, probes[u], tup.word, tup.sigma, tup.p, tup.q, d_loc);
      for (const BernsteinRow& row : trend.rows)
        rows.push_back({word_label(tup.word), format_double(tup.sigma), format_double(tup.p),
                        format_double(tup.q), std::to_string(u), std::to_string(row.j),
                        format_double(row.ratio), format_double(std::log10(row.ratio))});
      if (u == 0) head = std::move(trend);
    }
    if (head.rows.size() < 2)
      throw std::runtime_error("fewer than two usable scales for " + label);
    const bool ok = std::isfinite(head.log10_slope) && std::abs(head.log10_slope) <= 0.15;
    all_ok = all_ok && ok;
    slopes[label] = {{"log10_slope", head.log10_slope}, {"scales_used", head.rows.size()}};
    if (!detail.empty()) detail += "; ";
    detail += label + ": slope " + fmt6(head.log10_slope);
    SvgSeries series{label, {}, {}};
    for (const BernsteinRow& row : head.rows) {
      series.x.push_back(row.j);
      series.y.push_back(row.ratio);
    }
    chart.push_back(std::move(series));
  }
  emit_csv(res, out_root, "bernstein/ratios.csv",
           {"word", "sigma", "p", "q", "probe", "j", "ratio", "log10_ratio"}, rows);
  emit(res, out_root, "bernstein/slopes.json", slopes.dump(2) + "\n");
  emit(res, out_root, "bernstein/trend.svg",
       svg_chart("Band-block ratios vs scale (point-mass probe)", "scale j", "ratio", chart,
                 /*log_y=*/true));
  add_criterion(res, "bernstein-flatness", all_ok, detail + " (bound 0.15)");
}

// ---------------------------------------------------------------------------
// kernel-estimates

void suite_kernel_estimates(const ExperimentConfig& cfg, const std::string& out_root,
                            SuiteResult& res) {
  Workbench wb(cfg);
  FilterBank bank(wb.engine, cfg.method, cfg.tolerance, cfg.max_degree);
  const Multiplier m = Multiplier::from_name(cfg.multiplier);
  const int norm_order = cfg.norm_order.value_or(wb.growth.smoothing_order + 1);

  KernelSweep sweep;
  sweep.t = cfg.sweeps.t;
  sweep.alpha = cfg.sweeps.alpha;
  sweep.words = cfg.sweeps.words;
  sweep.p = cfg.sweeps.p;
  const EstimateReport report =
      check_kernel_estimates(wb.engine, m, norm_order, sweep, wb.metric, wb.growth, cfg.method);

  std::vector<std::vector<std::string>> rows;
  for (const EstimateRow& row : report.rows)
    rows.push_back({format_double(row.t), std::to_string(row.alpha), word_label(row.word),
                    format_double(row.p), format_double(row.measured),
                    format_double(row.envelope), format_double(row.ratio)});
  emit_csv(res, out_root, "kernel-estimates/envelope.csv",
           {"t", "alpha", "word", "p", "measured", "envelope", "ratio"}, rows);
  add_criterion(res, "kernel-envelope", report.pass,
                "fitted constant " + fmt6(report.fitted_constant) + " over " +
                    std::to_string(report.rows.size()) + " rows at regularity order " +
                    std::to_string(norm_order));

  // Scale-flatness of the band kernels in l1.
  const BlockProfile blocks = block_l1_profile(bank);
  std::vector<std::vector<std::string>> block_rows;
  for (size_t j = 0; j < blocks.l1_norms.size(); ++j)
    block_rows.push_back({std::to_string(j), format_double(blocks.l1_norms[j])});
  emit_csv(res, out_root, "kernel-estimates/blocks_l1.csv", {"j", "l1_norm"}, block_rows);
  add_criterion(res, "block-flatness", blocks.max_over_median <= 2.0,
                "max/median of band-kernel l1 norms = " + fmt6(blocks.max_over_median) +
                    " (bound 2)");

  // Decay profile of the band kernel at unit scale.
  {
    const GroupSignal K = kernel_of(wb.engine, m, 1.0, cfg.method).signal;
    const std::vector<int> alphas = {0, 1, 2, 3, 4, 5, 6};
    const auto profile = schwartz_decay_profile(K, wb.metric, alphas);
    std::vector<std::vector<std::string>> decay_rows;
    SvgSeries series{"p_alpha(K)", {}, {}};
    for (const DecayProfileRow& row : profile) {
      decay_rows.push_back({std::to_string(row.alpha), format_double(row.seminorm)});
      series.x.push_back(row.alpha);
      series.y.push_back(row.seminorm);
    }
    emit_csv(res, out_root, "kernel-estimates/decay.csv", {"alpha", "seminorm"}, decay_rows);
    emit(res, out_root, "kernel-estimates/decay.svg",
         svg_chart("Weighted sup seminorms of the " + m.name() + " kernel", "alpha",
                   "seminorm", {series}, /*log_y=*/true));
  }

  // Low-pass approximation f -> S_j f on a seeded probe.
  {
    const GroupSignal probe =
        gaussian_ensemble(wb.group, 1, cfg.ensemble.seed).front();
    const std::vector<double> seq = sj_convergence_check(bank, probe, 2, {});
    std::vector<std::vector<std::string>> sj_rows;
    for (size_t j = 0; j < seq.size(); ++j)
      sj_rows.push_back({std::to_string(j), format_double(seq[j])});
    emit_csv(res, out_root, "kernel-estimates/sj_convergence.csv", {"j", "seminorm"}, sj_rows);
    bool monotone = true;
    for (size_t j = 2; j + 1 < seq.size(); ++j)
      monotone = monotone && seq[j + 1] <= seq[j] * (1.0 + 1e-9) + 1e-12;
    const double final_bound =
        bank.method() == ApplyMethod::kExact ? 1e-10 : cfg.tolerance * 100.0;
    const bool converged = seq.back() <= final_bound;
    add_criterion(res, "sj-convergence", monotone && converged,
                  "final seminorm " + fmt6(seq.back()) + " (bound " + fmt6(final_bound) +
                      "), non-increasing after j=2: " + (monotone ? "yes" : "no"));
  }

  ordered_json j;
  j["multiplier"] = m.name();
  j["norm_order"] = norm_order;
  j["fitted_constant"] = report.fitted_constant;
  j["degenerate_rows"] = report.degenerate_rows;
  j["block_l1_max_over_median"] = blocks.max_over_median;
  emit(res, out_root, "kernel-estimates/kernel.json", j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// heat-bounds

void suite_heat_bounds(const ExperimentConfig& cfg, const std::string& out_root,
                       SuiteResult& res) {
  Workbench wb(cfg);
  ordered_json heat_json;

  // Mass and positivity across the sweep.
  {
    double worst_mass = 0.0, worst_min = 0.0;
    for (double t : cfg.sweeps.t) {
      const GroupSignal pt = heat_kernel(wb.engine, t, cfg.method);
      worst_mass = std::max(worst_mass, std::abs(pt.values.sum() - 1.0));
      worst_min = std::min(worst_min, pt.values.minCoeff());
    }
    heat_json["max_mass_error"] = worst_mass;
    heat_json["min_entry"] = worst_min;
    const bool ok = worst_mass <= 1e-12 && worst_min >= -1e-12;
    add_criterion(res, "heat-kernel-laws", ok,
                  "max mass error " + fmt6(worst_mass) + ", min entry " + fmt6(worst_min));
  }

  // Semigroup composition p_{t1+t2} = p_{t1} * p_{t2}.
  {
    double worst = 0.0;
    for (auto [t1, t2] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.0, 2.0}}) {
      const GroupSignal a = heat_kernel(wb.engine, t1, cfg.method);
      const GroupSignal b = heat_kernel(wb.engine, t2, cfg.method);
      const GroupSignal c = heat_kernel(wb.engine, t1 + t2, cfg.method);
      GroupSignal conv = convolve(a, b);
      conv.values -= c.values;
      worst = std::max(worst, lp_norm(conv, 1.0));
    }
    heat_json["max_semigroup_l1_error"] = worst;
    add_criterion(res, "heat-semigroup", worst <= 1e-10,
                  "max l1 composition error " + fmt6(worst) + " (bound 1e-10)");
  }

  // Gaussian envelope constants over the sweep.
  {
    const double t_cap = 0.0625 * wb.metric.r_max * wb.metric.r_max;
    std::vector<double> ts;
    for (double t : cfg.sweeps.t)
      if (t <= t_cap) ts.push_back(t);
    if (ts.empty()) {
      add_criterion(res, "gaussian-span", false,
                    "no sweep scale fits the wrap-around cap (r_max/4)^2 = " + fmt6(t_cap));
    } else {
      const GaussianFit fit = check_gaussian_bound(wb.engine, wb.metric, wb.growth, ts, {},
                                                   cfg.method);
      std::vector<std::vector<std::string>> rows;
      SvgSeries series{"C(t)", {}, {}};
      for (const GaussianFitRow& row : fit.rows) {
        rows.push_back({format_double(row.t), format_double(row.constant)});
        series.x.push_back(row.t);
        series.y.push_back(row.constant);
      }
      emit_csv(res, out_root, "heat-bounds/gaussian.csv", {"t", "constant"}, rows);
      emit(res, out_root, "heat-bounds/gaussian.svg",
           svg_chart("Fitted Gaussian envelope constant", "t", "C(t)", {series}));
      heat_json["gaussian_span"] = fit.span;
      add_criterion(res, "gaussian-span", fit.span < 4.0,
                    "C(t) span " + fmt6(fit.span) + " over " + std::to_string(fit.rows.size()) +
                        " scales (bound 4)");

      // Derivative variant on the sub-unit scales.
      std::vector<int> word;
      for (const std::vector<int>& w : cfg.sweeps.words)
        if (!w.empty()) {
          word = w;
          break;
        }
      std::vector<double> small_ts;
      for (double t : ts)
        if (t <= 1.0) small_ts.push_back(t);
      if (!word.empty() && !small_ts.empty()) {
        const GaussianFit dfit =
            check_gaussian_bound(wb.engine, wb.metric, wb.growth, small_ts, word, cfg.method);
        std::vector<std::vector<std::string>> drows;
        for (const GaussianFitRow& row : dfit.rows)
          drows.push_back({format_double(row.t), format_double(row.constant)});
        emit_csv(res, out_root, "heat-bounds/gaussian_derivative.csv", {"t", "constant"},
                 drows);
        heat_json["gaussian_derivative_span"] = dfit.span;
      }
    }
  }

  // Propagation: almost all of cos(s sqrt(L)) delta_e lives within radius
  // s * sqrt(lambda_max), plus a two-step margin.
  {
    const GroupSignal delta = GroupSignal::delta(wb.group, wb.group.identity());
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    std::string detail;
    for (double s : {1.0, 2.0, 4.0}) {
      const int radius =
          static_cast<int>(std::ceil(s * std::sqrt(wb.lap.lambda_max()))) + 2;
      const GroupSignal w = wave_cosine(wb.engine, s, delta, cfg.method).signal;
      double outside = 0.0;
      for (int x = 0; x < w.size(); ++x)
        if (wb.metric.dist[x] > radius) outside += std::abs(w[x]);
      rows.push_back({format_double(s), std::to_string(radius), format_double(outside)});
      ok = ok && outside <= 1e-6;
      if (!detail.empty()) detail += "; ";
      detail += "s=" + fmt6(s) + ": outside mass " + fmt6(outside);
    }
    emit_csv(res, out_root, "heat-bounds/wave.csv", {"s", "radius", "outside_mass"}, rows);
    add_criterion(res, "wave-propagation", ok, detail + " (bound 1e-6)");
  }

  emit(res, out_root, "heat-bounds/heat.json", heat_json.dump(2) + "\n");
}

}  // namespace

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
  SuiteResult res;
  res.name = name;
  ensure_directory(path_join(cfg.output_dir, name));
  try {
    if (name == "growth") {
      suite_growth(cfg, cfg.output_dir, res);
    } else if (name == "lp-check") {
      suite_lp_check(cfg, cfg.output_dir, res);
    } else if (name == "besov-compare") {
      suite_besov(cfg, cfg.output_dir, res);
    } else if (name == "bernstein") {
      suite_bernstein(cfg, cfg.output_dir, res);
    } else if (name == "kernel-estimates") {
      suite_kernel_estimates(cfg, cfg.output_dir, res);
    } else if (name == "heat-bounds") {
      suite_heat_bounds(cfg, cfg.output_dir, res);
    } else {
      res.error = "unknown suite \"" + name + "\"";
      return res;
    }
    res.ran = true;
    res.pass = true;
    for (const CriterionResult& c : res.criteria) res.pass = res.pass && c.pass;
  } catch (const std::exception& e) {
    res.ran = true;
    res.pass = false;
    res.error = e.what();
  }
  return res;
}

int run_all(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) Eigen::setNbThreads(cfg.threads);
  ensure_directory(cfg.output_dir);

  std::vector<SuiteResult> results;
  for (const std::string& name : cfg.suites) results.push_back(run_suite(name, cfg));

  ordered_json summary;
  summary["schema_version"] = 1;
  summary["group"] = cfg.group.label();
  summary["method"] = to_string(cfg.method);
  summary["tolerance"] = cfg.tolerance;
  summary["seed"] = cfg.ensemble.seed;
  summary["ensemble_size"] = cfg.ensemble.size;
  ordered_json suites_json, criteria_json;
  bool all_pass = true;
  for (const SuiteResult& r : results) {
    ordered_json s;
    s["ran"] = r.ran;
    s["pass"] = r.pass;
    if (!r.error.empty()) s["error"] = r.error;
    s["files"] = r.files;
    suites_json[r.name] = std::move(s);
    for (const CriterionResult& c : r.criteria)
      criteria_json[c.name] = ordered_json{{"pass", c.pass}, {"detail", c.detail}};
    all_pass = all_pass && r.pass;
  }
  summary["suites"] = std::move(suites_json);
  summary["criteria"] = std::move(criteria_json);
  summary["overall_pass"] = all_pass;
  write_text_file(path_join(cfg.output_dir, "summary.json"), summary.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

}  // namespace lpbesov
