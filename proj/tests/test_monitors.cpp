#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "glmcf/errors.hpp"
#include "glmcf/flow.hpp"
#include "glmcf/metric.hpp"
#include "glmcf/monitors.hpp"
#include "glmcf/trig_poly.hpp"

using namespace glmcf;

namespace {

GraphState make_state(const PeriodicGrid& g, const TrigPoly& u) {
  GraphState st;
  st.base_potential = ScalarField(g, 0);
  st.u = u.empty() ? ScalarField(g, 0) : u.sample(g);
  return st;
}

// Three consecutive flow slices at equal spacing, centered after `lead` steps.
std::array<Slice, 3> flow_slices(const GraphState& st0, const MetricField& m, double dt,
                                 int lead) {
  GraphState st = st0;
  for (int k = 0; k < lead; ++k) st = step_rk4(st, m, dt);
  std::array<Slice, 3> s;
  for (int k = 0; k < 3; ++k) {
    s[k].state = st;
    s[k].bundle = analyze_graph(st, m);
    st = step_rk4(st, m, dt);
  }
  return s;
}

}  // namespace

TEST_CASE("scalar_monitors: closed forms for a single mode on the flat circle") {
  const PeriodicGrid g(1, 128);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  GraphState st = make_state(g, TrigPoly::parse("0.1 sin 1", 1));
  st.u0_at_p = st.u.value(std::size_t{0});
  MonitorContext ctx;  // theta_hat = 0, k1 = k2 = 1
  ctx.u0_at_p = st.u0_at_p;
  const MonitorSample s = scalar_monitors(st, m, analyze_graph(st, m), ctx);

  // u = 0.1 sin q: tau = u^2, vartheta = (u')^2, rho = (u'')^2, Theta = (u''')^2.
  CHECK(s.tau_max == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(s.vartheta_max == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(s.rho_max == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(s.bigtheta_max == doctest::Approx(0.01).epsilon(1e-5));
  // q = rho + vartheta + tau = 0.01 (1 + sin^2 q), sup = 0.02.
  CHECK(s.q_max == doctest::Approx(0.02).epsilon(1e-6));
  CHECK(s.u_tilde_sup == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(s.osc_theta == doctest::Approx(2.0 * std::atan(0.1)).epsilon(1e-5));
}

TEST_CASE("scalar_monitors: tau vanishes when u tracks the reference drift") {
  const PeriodicGrid g(1, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  GraphState st = make_state(g, {});
  for (std::size_t p = 0; p < g.size(); ++p) st.u.at(p) = 0.3;
  st.t = 1.0;
  MonitorContext ctx;
  ctx.theta_hat = 0.3;  // off = u0_at_p + theta_hat t = 0.3
  const MonitorSample s = scalar_monitors(st, m, analyze_graph(st, m), ctx);
  CHECK(s.tau_max == 0.0);
  CHECK(s.vartheta_max <= 1e-30);  // stencil rounding of the constant field
}

TEST_CASE("scalar_monitors: constant shifts with matching anchor change nothing") {
  const PeriodicGrid g(2, 32);
  const MetricField m =
      build_metric(MetricSpec::conformal(TrigPoly::parse("0.1 sin 1 0", 2)), g);
  GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2));
  st.harmonic = {0.3, 0.0, 0.0};
  st.u0_at_p = st.u.value(std::size_t{0});
  MonitorContext ctx;
  ctx.u0_at_p = st.u0_at_p;
  const MonitorSample s1 = scalar_monitors(st, m, analyze_graph(st, m), ctx);

  const double shift = 4.5;
  for (std::size_t p = 0; p < g.size(); ++p) st.u.at(p) += shift;
  ctx.u0_at_p += shift;
  const MonitorSample s2 = scalar_monitors(st, m, analyze_graph(st, m), ctx);

  // The shift survives the difference stencils only up to rounding of u + c.
  CHECK(std::fabs(s1.tau_max - s2.tau_max) <= 1e-10);
  CHECK(std::fabs(s1.vartheta_max - s2.vartheta_max) <= 1e-12);
  CHECK(std::fabs(s1.rho_max - s2.rho_max) <= 1e-12);
  CHECK(std::fabs(s1.bigtheta_max - s2.bigtheta_max) <= 1e-10);
  CHECK(std::fabs(s1.q_max - s2.q_max) <= 1e-10);
  CHECK(std::fabs(s1.osc_theta - s2.osc_theta) <= 1e-12);
  CHECK(std::fabs(s1.u_tilde_sup - s2.u_tilde_sup) <= 1e-10);
}

TEST_CASE("residual_theta_evolution: stationary states give a zero residual") {
  const PeriodicGrid g(2, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  GraphState st = make_state(g, {});
  st.harmonic = {0.4, -0.2, 0.0};
  const double dt = stable_dt(m, 0.4);
  const auto s = flow_slices(st, m, dt, 1);
  CHECK(residual_theta_evolution(s[0], s[1], s[2], m) <= 1e-12);
}

TEST_CASE("residual_theta_evolution shrinks under refinement") {
  auto residual = [](int N) {
    const PeriodicGrid g(1, N);
    const MetricField m = build_metric(MetricSpec::flat(), g);
    const GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1", 1));
    const double dt = stable_dt(m, 0.4);
    const auto s = flow_slices(st, m, dt, 1);
    return residual_theta_evolution(s[0], s[1], s[2], m);
  };
  const double coarse = residual(64);
  const double fine = residual(128);
  CHECK(fine <= 1e-6);
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("residual slices must be equally spaced") {
  const PeriodicGrid g(1, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  const GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1", 1));
  const double dt = stable_dt(m, 0.4);
  auto s = flow_slices(st, m, dt, 1);
  s[2].state.t += dt;  // break the spacing
  CHECK_THROWS_AS(residual_theta_evolution(s[0], s[1], s[2], m), config_error);
}

TEST_CASE("lemma_residuals: flat harmonic graph is stationary, all residuals vanish") {
  const PeriodicGrid g(2, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  GraphState st = make_state(g, {});
  st.harmonic = {0.4, -0.2, 0.0};
  const double dt = stable_dt(m, 0.4);
  const auto s = flow_slices(st, m, dt, 1);
  MonitorContext ctx;
  ctx.theta_hat = s[1].bundle.theta.value(std::size_t{0});
  const LemmaResiduals r = lemma_residuals(s[0], s[1], s[2], m, ctx);
  CHECK(r.theta_evol <= 1e-11);
  CHECK(r.tau <= 1e-11);
  CHECK(r.vartheta <= 1e-11);
  CHECK(r.rho <= 1e-11);
  CHECK(r.bigtheta <= 1e-11);
}

TEST_CASE("lemma_residuals shrink under joint space-time refinement (curved torus)") {
  auto residuals = [](int N) {
    const PeriodicGrid g(2, N);
    const MetricField m =
        build_metric(MetricSpec::conformal(TrigPoly::parse("0.1 sin 1 0", 2)), g);
    GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2));
    st.harmonic = {0.2, 0.0, 0.0};
    st.u0_at_p = st.u.value(std::size_t{0});
    const double dt = stable_dt(m, 0.4);
    const auto s = flow_slices(st, m, dt, 1);
    MonitorContext ctx;
    ctx.u0_at_p = st.u0_at_p;
    return lemma_residuals(s[0], s[1], s[2], m, ctx);
  };
  const LemmaResiduals c = residuals(32);
  const LemmaResiduals f = residuals(64);
  CHECK(c.theta_evol / f.theta_evol >= 4.0);
  CHECK(c.tau / f.tau >= 4.0);
  CHECK(c.vartheta / f.vartheta >= 4.0);
  CHECK(c.rho / f.rho >= 4.0);
  CHECK(c.bigtheta / f.bigtheta >= 4.0);
}

TEST_CASE("curvature commutators are load-bearing: dropping them stalls convergence") {
  auto residuals = [](int N, const ResidualOptions& opt) {
    const PeriodicGrid g(2, N);
    const MetricField m =
        build_metric(MetricSpec::conformal(TrigPoly::parse("0.3 sin 1 0", 2)), g);
    GraphState st = make_state(g, TrigPoly::parse("0.05 sin 1 1", 2));
    st.u0_at_p = st.u.value(std::size_t{0});
    const double dt = stable_dt(m, 0.4);
    const auto s = flow_slices(st, m, dt, 1);
    MonitorContext ctx;
    ctx.u0_at_p = st.u0_at_p;
    return lemma_residuals(s[0], s[1], s[2], m, ctx, opt);
  };
  ResidualOptions no_xi1;
  no_xi1.include_xi1 = false;
  ResidualOptions no_xi2;
  no_xi2.include_xi2 = false;
  const LemmaResiduals full = residuals(64, {});
  const LemmaResiduals ab1 = residuals(64, no_xi1);
  const LemmaResiduals ab2 = residuals(64, no_xi2);
  CHECK(ab1.rho / full.rho >= 5.0);
  CHECK(ab2.bigtheta / full.bigtheta >= 5.0);
}

TEST_CASE("harnack_functional: constants give zero, alpha domain enforced") {
  const PeriodicGrid g(1, 32);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  TensorField eta_inv(g, 2, 2);
  for (std::size_t p = 0; p < g.size(); ++p) eta_inv.at(p, 0, 0) = 1.0;
  CompanionState cs;
  cs.v = ScalarField(g, 0);
  for (std::size_t p = 0; p < g.size(); ++p) cs.v.at(p) = 3.0;
  cs.t = 2.0;
  CHECK(harnack_functional(cs, eta_inv, m, 1.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(harnack_functional(cs, eta_inv, m, 1.0), config_error);
  CHECK_THROWS_AS(harnack_functional(cs, eta_inv, m, 2.0), config_error);
  cs.v.at(std::size_t{0}) = -1.0;
  CHECK_THROWS_AS(harnack_functional(cs, eta_inv, m, 1.5), numeric_error);
}

TEST_CASE("harnack_functional matches the closed form for a log-cosine profile") {
  const PeriodicGrid g(1, 128);
  const MetricField m = build_metric(MetricSpec::flat(), g);
  TensorField eta_inv(g, 2, 2);
  for (std::size_t p = 0; p < g.size(); ++p) eta_inv.at(p, 0, 0) = 1.0;
  const double b = 0.2, alpha = 1.5, t = 0.7;
  CompanionState cs;
  cs.v = ScalarField(g, 0);
  for (std::size_t p = 0; p < g.size(); ++p)
    cs.v.at(p) = std::exp(b * std::cos(g.point(p)[0]));
  cs.t = t;
  // v = e^w, w = b cos q: F = t((w')^2 - alpha(w'' + (w')^2)).
  double expect = -HUGE_VAL;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double q = g.point(p)[0];
    const double w1 = -b * std::sin(q), w2 = -b * std::cos(q);
    expect = std::max(expect, t * (w1 * w1 - alpha * (w2 + w1 * w1)));
  }
  CHECK(harnack_functional(cs, eta_inv, m, alpha) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("oscillation_series: exact exponential gives unit ratios e^{-1}") {
  std::vector<MonitorSample> samples;
  for (int k = 0; k <= 12; ++k) {
    MonitorSample s;
    s.t = 0.25 * k;
    s.theta_dot_sup = 0.5 * std::exp(-s.t);
    s.theta_dot_inf = -0.5 * std::exp(-s.t);
    samples.push_back(s);
  }
  const OscillationSeries os = oscillation_series(samples);
  CHECK(os.monotone_ok);
  REQUIRE(os.unit_ratios.size() == 3);
  for (const double r : os.unit_ratios) CHECK(r == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  samples[5].theta_dot_sup = 10.0;  // inject a bump
  CHECK_FALSE(oscillation_series(samples).monotone_ok);
}

TEST_CASE("decay_fit recovers an exact exponential and rejects bad input") {
  std::vector<double> t, s;
  for (int k = 0; k <= 40; ++k) {
    t.push_back(0.25 * k);
    s.push_back(2.0 * std::exp(-0.5 * t.back()));
  }
  const DecayFit fit = decay_fit(t, s, 1.0, 10.0);
  CHECK(fit.c1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.c2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(decay_fit(t, s, 9.9, 10.0), config_error);  // one sample in window
  auto s0 = s;
  s0[10] = 0.0;
  CHECK_THROWS_AS(decay_fit(t, s0, 1.0, 10.0), config_error);
}
