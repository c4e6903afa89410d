// Acceptance gate: one pass/fail line per criterion, tolerances pinned below.
// Exits nonzero if any criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "glmcf/angle.hpp"
#include "glmcf/checkpoint.hpp"
#include "glmcf/config.hpp"
#include "glmcf/flow.hpp"
#include "glmcf/metric.hpp"
#include "glmcf/monitors.hpp"
#include "glmcf/random_fields.hpp"
#include "glmcf/reduce.hpp"
#include "glmcf/scenarios.hpp"
#include "glmcf/trig_poly.hpp"

using namespace glmcf;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %02d [%s] %s  (%s)\n", id, ok ? "pass" : "FAIL", what.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

GraphState make_state(const PeriodicGrid& g, const TrigPoly& u,
                      std::array<double, 3> c = {0.0, 0.0, 0.0}) {
  GraphState st;
  st.harmonic = c;
  st.base_potential = ScalarField(g, 0);
  st.u = u.empty() ? ScalarField(g, 0) : u.sample(g);
  st.u0_at_p = st.u.value(std::size_t{0});
  return st;
}

MetricField conformal_metric(const PeriodicGrid& g) {
  return build_metric(MetricSpec::conformal(TrigPoly::parse("0.1 sin 1 0", g.dim)), g);
}

double sup_diff(const TensorField& a, const TensorField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    worst = std::max(worst, std::fabs(a.raw()[i] - b.raw()[i]));
  return worst;
}

std::string slurp(const std::string& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// ---- criterion 1: angle branch consistency on seeded random states --------
// 100 band-limited random graphs on the flat and curved 2-torus at N = 64;
// whenever sup |eigenvalue| <= 5 the determinant identity must agree with the
// eigenvalue sum to 1e-9.
void criterion_1() {
  const PeriodicGrid g(2, 64);
  const MetricField flat = build_metric(MetricSpec::flat(), g);
  const MetricField curved = conformal_metric(g);
  std::mt19937_64 rng(7);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const MetricField& m = trial % 2 ? curved : flat;
    GraphState st = make_state(g, random_band_limited(rng, 2, 3, 0.5, 6),
                               {0.25, -0.15, 0.0});
    const AngleBundle b = analyze_graph(st, m);
    if (b.lambda_max <= 5.0) {
      worst = std::max(worst, b.branch_residual);
      ++checked;
    }
  }
  report(1, checked >= 90 && worst <= 1e-9, "angle branch consistency, 100 random states",
         fmt("sup residual %.3g over %.0f states, tol 1e-9", worst, checked));
}

// ---- criterion 2: angle gradient identity refines at 4th order ------------
// sup |d theta - eta^{pq} chi_{p;qk}| must drop by >= 12x from N = 64 to 128
// on both metric families.
void criterion_2() {
  auto residual = [](int N, bool flat) {
    const PeriodicGrid g(2, N);
    const MetricField m = flat ? build_metric(MetricSpec::flat(), g) : conformal_metric(g);
    const GraphState st =
        make_state(g, TrigPoly::parse("0.05 sin 1 1; 0.03 cos 2 1", 2), {0.2, 0.0, 0.0});
    return angle_gradient_residual(analyze_graph(st, m), m);
  };
  const double rf = residual(64, true) / residual(128, true);
  const double rc = residual(64, false) / residual(128, false);
  report(2, rf >= 12.0 && rc >= 12.0, "angle gradient identity refinement 64 -> 128",
         fmt("ratios flat %.3g, curved %.3g, need >= 12", rf, rc));
}

// ---- criterion 3: evolution identities for tau, vartheta, rho, Theta ------
// Centered-difference residuals on the curved 2-torus, amplitude 0.05, must
// shrink >= 11x under (h, dt) -> (h/2, dt/4) and reach <= 1e-4 at N = 128.
void criterion_3() {
  auto residuals = [](int N) {
    const PeriodicGrid g(2, N);
    const MetricField m = conformal_metric(g);
    GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2), {0.2, 0.0, 0.0});
    const double dt = stable_dt(m, 0.4);
    std::array<Slice, 3> s;
    GraphState cur = st;
    cur = step_rk4(cur, m, dt);
    for (int k = 0; k < 3; ++k) {
      s[k].state = cur;
      s[k].bundle = analyze_graph(cur, m);
      cur = step_rk4(cur, m, dt);
    }
    MonitorContext ctx;
    ctx.u0_at_p = st.u0_at_p;
    return lemma_residuals(s[0], s[1], s[2], m, ctx);
  };
  const LemmaResiduals c = residuals(64);
  const LemmaResiduals f = residuals(128);
  const double ratios[4] = {c.tau / f.tau, c.vartheta / f.vartheta, c.rho / f.rho,
                            c.bigtheta / f.bigtheta};
  const double abs_worst = std::max({f.tau, f.vartheta, f.rho, f.bigtheta});
  double rmin = ratios[0];
  for (double r : ratios) rmin = std::min(rmin, r);
  report(3, rmin >= 11.0 && abs_worst <= 1e-4,
         "evolution identities (tau, vartheta, rho, Theta)",
         fmt("min ratio %.3g (need >= 11), worst fine residual %.3g (tol 1e-4)", rmin,
             abs_worst));
}

// ---- criteria 4-6: one monitored flow on each family ----------------------
// 4: osc(theta) non-increasing (1e-8 slack) and sup/inf theta-dot monotone.
// 5: osc(theta-dot) fits C1 e^{-C2 t} on [1, 10]: C2 > 0, R^2 >= 0.995 flat
//    and >= 0.99 curved.
// 6: on a small run (rho(0) <= 1e-3) sup_t rho <= 4 rho(0), sup_t Q <= 4 Q(0).
MonitoredRun monitored_flow(const MetricField& m, const TrigPoly& u0,
                            std::array<double, 3> c, double t_max) {
  GraphState st = make_state(m.grid, u0, c);
  FlowConfig fc;
  fc.cfl = 0.4;
  fc.t_max = t_max;
  fc.osc_tol = 0.0;  // hold the full horizon
  fc.sample_every = 10;
  MonitorContext ctx;
  ctx.u0_at_p = st.u0_at_p;
  return flow_with_monitors(std::move(st), m, fc, ctx);
}

void criteria_4_5_6() {
  const PeriodicGrid g(2, 32);
  const MetricField flat = build_metric(MetricSpec::flat(), g);
  const MetricField curved = conformal_metric(g);
  const MonitoredRun rf =
      monitored_flow(flat, TrigPoly::parse("0.05 sin 1 1", 2), {0.3, 0.0, 0.0}, 10.0);
  const MonitoredRun rc =
      monitored_flow(curved, TrigPoly::parse("0.05 sin 1 1", 2), {0.3, 0.0, 0.0}, 10.0);

  // criterion 4
  int viol = 0;
  for (const MonitoredRun* run : {&rf, &rc}) {
    const auto& s = run->samples;
    for (std::size_t k = 1; k < s.size(); ++k) {
      if (s[k].osc_theta > s[k - 1].osc_theta + 1e-8) ++viol;
      if (s[k].theta_dot_sup > s[k - 1].theta_dot_sup + 1e-8) ++viol;
      if (s[k].theta_dot_inf < s[k - 1].theta_dot_inf - 1e-8) ++viol;
    }
  }
  report(4, viol == 0, "oscillation and extremal theta-dot monotonicity",
         fmt("%.0f violations across both families (slack 1e-8)", viol));

  // criterion 5
  auto fit_of = [](const MonitoredRun& run) {
    std::vector<double> t, chi;
    for (const auto& s : run.samples) {
      t.push_back(s.t);
      chi.push_back(s.osc_theta);
    }
    return decay_fit(t, chi, 1.0, 10.0);
  };
  const DecayFit ff = fit_of(rf);
  const DecayFit fc2 = fit_of(rc);
  report(5, ff.c2 > 0.0 && ff.r_squared >= 0.995 && fc2.c2 > 0.0 && fc2.r_squared >= 0.99,
         "exponential decay of osc(theta-dot) on [1, 10]",
         fmt("flat C2 %.3g R2 %.5g; curved R2 %.5g", ff.c2, ff.r_squared, fc2.r_squared));

  // criterion 6: a genuinely small run
  const MonitoredRun rs =
      monitored_flow(curved, TrigPoly::parse("0.01 sin 1 1", 2), {0.2, 0.0, 0.0}, 10.0);
  const double rho0 = rs.samples.front().rho_max;
  const double q0 = rs.samples.front().q_max;
  double rho_sup = 0.0, q_sup = 0.0;
  for (const auto& s : rs.samples) {
    rho_sup = std::max(rho_sup, s.rho_max);
    q_sup = std::max(q_sup, s.q_max);
  }
  report(6, rho0 <= 1e-3 && rho_sup <= 4.0 * rho0 && q_sup <= 4.0 * q0,
         "small-data bounds: sup rho <= 4 rho(0), sup Q <= 4 Q(0)",
         fmt("rho(0) %.3g, sup/initial rho %.3g, Q %.3g", rho0, rho_sup / rho0, q_sup / q0));
}

// ---- criterion 7: uniqueness of the special Lagrangian limit --------------
// Two different potentials in the same class must flow to 1-forms within
// 1e-6 in sup norm.
void criterion_7() {
  const PeriodicGrid g(2, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  auto limit = [&](const char* u0) {
    GraphState st = make_state(g, TrigPoly::parse(u0, 2), {0.3, 0.1, 0.0});
    FlowConfig fc;
    fc.cfl = 0.4;
    fc.t_max = 60.0;
    fc.osc_tol = 1e-10;
    const FlowResult r = run_flow(st, m, fc, {});
    return assemble_chi(r.state, m);
  };
  const CovectorField a = limit("0.05 sin 1 1");
  const CovectorField b = limit("0.04 cos 1 0; 0.02 sin 0 2");
  const double dist = sup_diff(a, b);
  report(7, dist <= 1e-6, "limit 1-form is independent of the starting potential",
         fmt("sup distance %.3g, tol 1e-6", dist));
}

// ---- criterion 8: stationarity of the reference solution ------------------
// From the bootstrapped reference, u(t) - u(0) - theta_hat t stays <= 1e-8
// in sup norm over t in [0, 1]. A diagonal metric is used: on the conformal
// 2-torus the constant form's chi' is trace-free and theta vanishes
// identically, which would make this criterion vacuous.
void criterion_8() {
  const PeriodicGrid g(2, 32);
  const MetricField m = build_metric(
      MetricSpec::diagonal({TrigPoly::parse("1 const; 0.2 sin 1 0", 2),
                            TrigPoly::parse("1 const; 0.1 cos 0 1", 2),
                            {}}),
      g);
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.N = 32;
  cfg.metric = MetricSpec::diagonal({TrigPoly::parse("1 const; 0.2 sin 1 0", 2),
                                     TrigPoly::parse("1 const; 0.1 cos 0 1", 2),
                                     {}});
  cfg.harmonic = {0.3, 0.1, 0.0};
  cfg.flow.cfl = 0.4;
  cfg.flow.t_max = 80.0;
  const BootstrapResult boot = run_bootstrap(cfg, m);

  GraphState st = boot.reference;
  FlowConfig fc;
  fc.cfl = 0.4;
  fc.t_max = 1.0;
  fc.osc_tol = 0.0;
  double worst = 0.0;
  run_flow(st, m, fc, [&](const GraphState& s, const AngleBundle&, long) {
    ScalarField drift = s.u;
    for (std::size_t p = 0; p < g.size(); ++p) drift.at(p) -= boot.theta_hat * s.t;
    worst = std::max(worst, sup_abs(drift));
  });
  report(8, worst <= 1e-8, "reference solution drifts linearly at rate theta_hat",
         fmt("sup |u - theta_hat t| = %.3g over [0, 1], tol 1e-8", worst));
}

// ---- criterion 9: companion maximum principle and stable contraction ------
// sup v non-increasing, inf v non-decreasing (no violations at 1e-12 slack);
// the oscillation contraction ratio per unit time settles to within +-0.05
// over the last five unit intervals.
void criterion_9() {
  const PeriodicGrid g(2, 32);
  const MetricField m = conformal_metric(g);
  GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2), {0.2, 0.0, 0.0});
  CompanionState cs;
  cs.v = ScalarField(g, 0);
  for (std::size_t p = 0; p < g.size(); ++p) cs.v.at(p) = 1.0 + 0.1 * std::cos(g.point(p)[0]);

  const double dt = stable_dt(m, 0.4);
  int violations = 0;
  std::vector<double> osc_at_int;
  double sup_prev = HUGE_VAL, inf_prev = -HUGE_VAL;
  double next_mark = 0.0;
  const double t_end = 9.0;
  while (cs.t < t_end - 0.5 * dt) {
    const AngleBundle b = analyze_graph(st, m);
    if (cs.t >= next_mark - 0.5 * dt) {
      const std::span<const double> vv(cs.v.plane(0), cs.v.points());
      osc_at_int.push_back(sup(vv) - inf(vv));
      next_mark += 1.0;
    }
    companion_step(cs, b.eta_inv, m, dt);
    st = step_rk4(st, m, dt);
    const std::span<const double> vv(cs.v.plane(0), cs.v.points());
    const double s = sup(vv), i = inf(vv);
    if (s > sup_prev + 1e-12 || i < inf_prev - 1e-12) ++violations;
    sup_prev = s;
    inf_prev = i;
  }
  std::vector<double> ratios;
  for (std::size_t k = 1; k < osc_at_int.size(); ++k)
    ratios.push_back(osc_at_int[k] / osc_at_int[k - 1]);
  double spread = 0.0;
  const std::size_t tail = 5;
  bool enough = ratios.size() >= tail;
  if (enough) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t k = ratios.size() - tail; k < ratios.size(); ++k) {
      lo = std::min(lo, ratios[k]);
      hi = std::max(hi, ratios[k]);
    }
    spread = hi - lo;
  }
  report(9, violations == 0 && enough && spread <= 0.05,
         "companion maximum principle and contraction stability",
         fmt("%.0f violations, ratio spread %.3g over last 5 unit intervals (tol 0.05)",
             violations, spread));
}

// ---- criterion 10: convergence orders and determinism ----------------------
// Temporal and spatial Richardson ratios >= 12, checkpoint round trip
// bit-exact, identical reruns byte-identical.
void criterion_10() {
  bool ok = true;
  std::string detail;

  {  // temporal order
    const PeriodicGrid g(1, 64);
    const MetricField m = build_metric(MetricSpec::flat(), g);
    const GraphState st0 = make_state(g, TrigPoly::parse("0.1 sin 1", 1));
    auto advance = [&](int steps) {
      GraphState st = st0;
      const double dt = 0.02 / steps;
      for (int k = 0; k < steps; ++k) st = step_rk4(st, m, dt);
      return st;
    };
    const GraphState ref = advance(64);
    const double ratio = sup_diff(advance(2).u, ref.u) / sup_diff(advance(4).u, ref.u);
    ok = ok && ratio >= 12.0;
    detail += fmt("temporal %.3g", ratio);
  }

  {  // spatial order via the theta evolution residual
    auto residual = [](int N) {
      const PeriodicGrid g(2, N);
      const MetricField m = conformal_metric(g);
      GraphState cur = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2), {0.2, 0.0, 0.0});
      const double dt = stable_dt(m, 0.4);
      std::array<Slice, 3> s;
      cur = step_rk4(cur, m, dt);
      for (int k = 0; k < 3; ++k) {
        s[k].state = cur;
        s[k].bundle = analyze_graph(cur, m);
        cur = step_rk4(cur, m, dt);
      }
      return residual_theta_evolution(s[0], s[1], s[2], m);
    };
    const double ratio = residual(32) / residual(64);
    ok = ok && ratio >= 12.0;
    detail += fmt(", spatial %.3g (both need >= 12)", ratio);
  }

  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "glmcf_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  {  // checkpoint round trip
    const PeriodicGrid g(2, 32);
    const MetricField m = conformal_metric(g);
    GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2), {0.3, 0.0, 0.0});
    for (int k = 0; k < 3; ++k) st = step_rk4(st, m, stable_dt(m, 0.4));
    save_checkpoint((tmp / "r.ckpt").string(), st, g);
    PeriodicGrid g2;
    const GraphState back = load_checkpoint((tmp / "r.ckpt").string(), g2);
    const bool bitexact = g2 == g && back.t == st.t && sup_diff(back.u, st.u) == 0.0 &&
                          sup_diff(back.base_potential, st.base_potential) == 0.0;
    ok = ok && bitexact;
    detail += bitexact ? ", checkpoint bit-exact" : ", checkpoint NOT bit-exact";
  }

  {  // byte-identical reruns
    ExperimentConfig cfg = ExperimentConfig::from_text(
        "[experiment]\nscenario = bootstrap\n[grid]\nn = 1\nN = 32\n"
        "[metric]\nfamily = conformal\nf = 0.1 sin 1\n[class]\nc = 0.3\n"
        "[flow]\ncfl = 0.4\nt_max = 40\nsample_every = 20\n");
    cfg.out_dir = (tmp / "run1").string();
    run_scenario(cfg);
    cfg.out_dir = (tmp / "run2").string();
    run_scenario(cfg);
    const bool same =
        slurp((tmp / "run1" / "monitors.csv").string()) ==
            slurp((tmp / "run2" / "monitors.csv").string()) &&
        slurp((tmp / "run1" / "final.ckpt").string()) ==
            slurp((tmp / "run2" / "final.ckpt").string());
    ok = ok && same;
    detail += same ? ", reruns byte-identical" : ", reruns DIFFER";
  }
  fs::remove_all(tmp);

  report(10, ok, "convergence orders, checkpointing and determinism", detail);
}

}  // namespace

int main() {
  std::printf("acceptance gate: 10 criteria\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_5_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0) {
    std::printf("all criteria pass\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}
