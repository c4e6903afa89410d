#include "glmcf/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "glmcf/checkpoint.hpp"
#include "glmcf/errors.hpp"
#include "glmcf/random_fields.hpp"
#include "glmcf/reduce.hpp"
#include "glmcf/report.hpp"

namespace glmcf {

namespace {

constexpr double kBootstrapTol = 1e-8;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

TrigPoly scale_poly(const TrigPoly& p, double s) {
  std::vector<TrigTerm> ts = p.terms();
  for (auto& t : ts) t.amp *= s;
  return TrigPoly(std::move(ts));
}

GraphState make_state(const ExperimentConfig& cfg, const PeriodicGrid& grid) {
  GraphState st;
  st.harmonic = cfg.harmonic;
  st.base_potential = cfg.phi_hat.sample(grid);
  st.u = cfg.u0.sample(grid);
  st.u0_at_p = st.u.value(0);
  return st;
}

DecayFit try_theta_dot_fit(const std::vector<MonitorSample>& samples) {
  std::vector<double> t, s;
  for (const auto& ms : samples) {
    t.push_back(ms.t);
    s.push_back(ms.osc_theta);
  }
  const double t_end = t.empty() ? 0.0 : t.back();
  try {
    return decay_fit(t, s, 1.0, 0.9 * t_end);
  } catch (const config_error&) {
    return DecayFit{};
  }
}

// Standard output set for one trajectory.
void emit_outputs(const std::string& dir, const ExperimentConfig& cfg,
                  const std::vector<MonitorSample>& samples, Termination term,
                  const std::string& extra, const GraphState* final_state,
                  const PeriodicGrid* grid) {
  if (samples.empty()) throw io_error("no samples: nothing to report");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "plots", ec);
  if (ec) throw io_error("cannot create output directory: " + dir);

  write_monitors_csv(dir + "/monitors.csv", samples);

  std::vector<double> t, osc, rho, q;
  for (const auto& s : samples) {
    t.push_back(s.t);
    osc.push_back(s.osc_theta);
    rho.push_back(s.rho_max);
    q.push_back(s.q_max);
  }
  write_svg_series(dir + "/plots/osc_theta.svg", "oscillation of theta", "osc(theta)", t, osc,
                   false);
  write_svg_series(dir + "/plots/osc_theta_dot_log.svg", "oscillation of theta-dot (log scale)",
                   "osc(theta-dot)", t, osc, true);
  write_svg_series(dir + "/plots/rho.svg", "sup |D2 u|^2_g", "rho", t, rho, false);
  write_svg_series(dir + "/plots/q.svg", "sup Q", "Q", t, q, false);

  const MonitorSample& last = samples.back();
  const DecayFit fit = try_theta_dot_fit(samples);
  const double rho0 = samples.front().rho_max;

  std::ostringstream rep;
  rep << "scenario: " << scenario_name(cfg.scenario) << "\n"
      << "termination: " << termination_name(term) << "\n"
      << fmt("final osc(theta): %.17g\n", last.osc_theta)
      << fmt("fitted C2: %.17g (R^2 = %.6g)\n", fit.c2, fit.r_squared);
  if (rho0 > 0.0)
    rep << fmt("sup_t rho / rho(0): %.6g\n", [&] {
      double m = 0.0;
      for (const auto& s : samples) m = std::max(m, s.rho_max);
      return m / rho0;
    }());
  else
    rep << "sup_t rho / rho(0): n/a (rho(0) = 0)\n";
  rep << "note: upsilon_max uses composed stencils and is O(h^2) accurate only\n";
  if (!extra.empty()) rep << "\n" << extra;
  write_text_file(dir + "/report.txt", rep.str());

  write_text_file(dir + "/config.resolved.cfg", cfg.to_text());
  if (final_state && grid) save_checkpoint(dir + "/final.ckpt", *final_state, *grid);
}

}  // namespace

MonitoredRun flow_with_monitors(GraphState state, const MetricField& m, const FlowConfig& fc,
                                const MonitorContext& ctx, int checkpoint_every,
                                const std::string& checkpoint_dir) {
  MonitoredRun run;
  if (checkpoint_every > 0 && !checkpoint_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(checkpoint_dir, ec);
    if (ec) throw io_error("cannot create checkpoint directory: " + checkpoint_dir);
  }
  run.flow = run_flow(
      std::move(state), m, fc,
      [&](const GraphState& st, const AngleBundle& b, long step) {
        run.samples.push_back(scalar_monitors(st, m, b, ctx));
        if (checkpoint_every > 0 && !checkpoint_dir.empty() && step % checkpoint_every == 0) {
          char name[40];
          std::snprintf(name, sizeof(name), "/step_%08ld.ckpt", step);
          save_checkpoint(checkpoint_dir + name, st, m.grid);
        }
      });
  return run;
}

BootstrapResult run_bootstrap(const ExperimentConfig& cfg, const MetricField& m) {
  GraphState st;
  st.harmonic = cfg.harmonic;
  st.base_potential = cfg.phi_hat.sample(m.grid);
  st.u = ScalarField(m.grid, 0);
  st.u0_at_p = 0.0;

  FlowConfig fc = cfg.flow;
  fc.osc_tol = kBootstrapTol;

  MonitorContext ctx;
  ctx.k1 = cfg.monitors.k1;
  ctx.k2 = cfg.monitors.k2;
  MonitoredRun run = flow_with_monitors(st, m, fc, ctx);
  if (run.flow.termination != Termination::Converged)
    throw numeric_error(std::string("bootstrap did not converge: ") +
                        termination_name(run.flow.termination));

  // Fold the limit into the base potential, dropping the drift and the mean.
  BootstrapResult res;
  ScalarField ut;
  double mean = 0.0;
  recenter(run.flow.state.u, m, ut, mean);

  res.reference.harmonic = cfg.harmonic;
  res.reference.base_potential = st.base_potential;
  res.reference.base_potential += ut;
  res.reference.u = ScalarField(m.grid, 0);
  res.reference.t = 0.0;
  res.samples = std::move(run.samples);

  const AngleBundle b = analyze_graph(res.reference, m);
  const std::span<const double> th(b.theta.plane(0), b.theta.points());
  res.theta_hat = 0.5 * (sup(th) + inf(th));
  return res;
}

namespace {

ScenarioOutcome scenario_bootstrap(ExperimentConfig cfg, const MetricField& m) {
  BootstrapResult boot = run_bootstrap(cfg, m);
  cfg.monitors.theta_hat = boot.theta_hat;
  cfg.monitors.u0_at_p = 0.0;

  std::ostringstream extra;
  extra << fmt("measured theta_hat: %.17g\n", boot.theta_hat);
  const AngleBundle b = analyze_graph(boot.reference, m);
  extra << fmt("reference special-lagrangian residual: %.6g\n",
               special_lagrangian_residual(b));

  ScenarioOutcome out;
  out.termination = Termination::Converged;
  out.samples = boot.samples;
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, extra.str(), &boot.reference,
               &m.grid);
  // The reference state doubles as the artifact other scenarios consume.
  save_checkpoint(cfg.out_dir + "/chi_hat.ckpt", boot.reference, m.grid);
  out.report = extra.str();
  return out;
}

ScenarioOutcome scenario_stability(ExperimentConfig cfg, const MetricField& m) {
  BootstrapResult boot = run_bootstrap(cfg, m);
  cfg.monitors.theta_hat = boot.theta_hat;

  TrigPoly shape = cfg.u0;
  if (shape.empty()) {
    std::mt19937_64 rng(cfg.seed);
    shape = random_band_limited(rng, cfg.n, 3, cfg.amplitude, 4);
  }

  std::ostringstream table;
  table << "amplitude ladder (geometric, x2):\n";
  table << "scale      rho0          sup_rho       termination  C2          R2        "
           "monotone\n";

  ScenarioOutcome out;
  std::vector<MonitorSample> primary;
  Termination primary_term = Termination::Converged;
  GraphState primary_final;

  for (int k = 0; k < cfg.ladder_steps; ++k) {
    const double scale = std::pow(2.0, k);
    GraphState st = boot.reference;
    st.u = scale_poly(shape, scale).sample(m.grid);
    st.u0_at_p = st.u.value(0);

    MonitorContext ctx = cfg.monitors;
    ctx.u0_at_p = st.u0_at_p;
    MonitoredRun run = flow_with_monitors(st, m, cfg.flow, ctx, cfg.flow.checkpoint_every,
                                          cfg.out_dir + "/checkpoints");
    const OscillationSeries osc = oscillation_series(run.samples);
    DecayFit fit;
    if (run.flow.termination == Termination::Converged) fit = try_theta_dot_fit(run.samples);

    double rho0 = run.samples.empty() ? 0.0 : run.samples.front().rho_max;
    double sup_rho = 0.0;
    for (const auto& s : run.samples) sup_rho = std::max(sup_rho, s.rho_max);

    char row[200];
    std::snprintf(row, sizeof(row), "%-10.4g %-13.6g %-13.6g %-12s %-11.5g %-9.5g %s\n", scale,
                  rho0, sup_rho, termination_name(run.flow.termination), fit.c2, fit.r_squared,
                  osc.monotone_ok ? "yes" : "no");
    table << row;

    if (k == 0) {
      primary = run.samples;
      primary_term = run.flow.termination;
      primary_final = run.flow.state;
    }
  }

  out.termination = primary_term;
  out.samples = std::move(primary);
  out.report = table.str();
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, &primary_final,
               &m.grid);
  return out;
}

ScenarioOutcome scenario_uniqueness(ExperimentConfig cfg, const MetricField& m) {
  if (cfg.u0.empty() || cfg.u0_alt.empty())
    throw config_error("uniqueness scenario needs initial.u0 and initial.u0_alt");
  BootstrapResult boot = run_bootstrap(cfg, m);
  cfg.monitors.theta_hat = boot.theta_hat;

  auto run_twin = [&](const TrigPoly& u0) {
    GraphState st = boot.reference;
    st.u = u0.sample(m.grid);
    st.u0_at_p = st.u.value(0);
    MonitorContext ctx = cfg.monitors;
    ctx.u0_at_p = st.u0_at_p;
    MonitoredRun run = flow_with_monitors(st, m, cfg.flow, ctx);
    if (run.flow.termination != Termination::Converged)
      throw numeric_error(std::string("uniqueness twin did not converge: ") +
                          termination_name(run.flow.termination));
    return run;
  };

  MonitoredRun ra = run_twin(cfg.u0);
  MonitoredRun rb = run_twin(cfg.u0_alt);

  const CovectorField ca = assemble_chi(ra.flow.state, m);
  const CovectorField cb = assemble_chi(rb.flow.state, m);
  double dist = 0.0;
  for (std::size_t i = 0; i < ca.raw().size(); ++i)
    dist = std::max(dist, std::fabs(ca.raw()[i] - cb.raw()[i]));

  ScenarioOutcome out;
  out.termination = Termination::Converged;
  out.samples = std::move(ra.samples);
  out.report = fmt("limit 1-form sup-distance between twins: %.17g\n", dist);
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, &ra.flow.state,
               &m.grid);
  return out;
}

struct LemmaRunResult {
  LemmaResiduals res;
  MonitorSample sample;
};

LemmaRunResult lemma_residuals_at(const ExperimentConfig& cfg, int N) {
  const PeriodicGrid grid(cfg.n, N);
  const MetricField m = build_metric(cfg.metric, grid);
  const double dt = stable_dt(m, cfg.flow.cfl);

  GraphState st = make_state(cfg, grid);
  std::vector<Slice> slices;
  for (int k = 0; k < 3; ++k) {
    st = step_rk4(st, m, dt);
    slices.push_back(Slice{st, analyze_graph(st, m)});
  }

  LemmaRunResult out;
  out.res = lemma_residuals(slices[0], slices[1], slices[2], m, cfg.monitors);
  out.sample = scalar_monitors(slices[1].state, m, slices[1].bundle, cfg.monitors);
  out.sample.residual_theta = out.res.theta_evol;
  out.sample.residual_tau = out.res.tau;
  out.sample.residual_vartheta = out.res.vartheta;
  out.sample.residual_rho = out.res.rho;
  out.sample.residual_bigtheta = out.res.bigtheta;
  return out;
}

ScenarioOutcome scenario_lemma_check(ExperimentConfig cfg, const MetricField& m) {
  (void)m;  // resolutions are built per refinement level
  const LemmaRunResult coarse = lemma_residuals_at(cfg, cfg.N);
  const LemmaRunResult fine = lemma_residuals_at(cfg, cfg.N * 2);

  auto ratio = [](double c, double f) { return f > 0.0 ? c / f : HUGE_VAL; };
  std::ostringstream rep;
  rep << "evolution-identity residuals, (h, dt) -> (h/2, dt/4):\n";
  rep << fmt("theta:     %.6g -> %.6g  ratio %.3g\n", coarse.res.theta_evol, fine.res.theta_evol,
             ratio(coarse.res.theta_evol, fine.res.theta_evol));
  rep << fmt("tau:       %.6g -> %.6g  ratio %.3g\n", coarse.res.tau, fine.res.tau,
             ratio(coarse.res.tau, fine.res.tau));
  rep << fmt("vartheta:  %.6g -> %.6g  ratio %.3g\n", coarse.res.vartheta, fine.res.vartheta,
             ratio(coarse.res.vartheta, fine.res.vartheta));
  rep << fmt("rho:       %.6g -> %.6g  ratio %.3g\n", coarse.res.rho, fine.res.rho,
             ratio(coarse.res.rho, fine.res.rho));
  rep << fmt("Theta:     %.6g -> %.6g  ratio %.3g\n", coarse.res.bigtheta, fine.res.bigtheta,
             ratio(coarse.res.bigtheta, fine.res.bigtheta));

  ScenarioOutcome out;
  out.termination = Termination::Converged;
  out.samples = {coarse.sample, fine.sample};
  out.report = rep.str();
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, nullptr, nullptr);
  return out;
}

ScenarioOutcome scenario_harnack(ExperimentConfig cfg, const MetricField& m) {
  BootstrapResult boot = run_bootstrap(cfg, m);
  cfg.monitors.theta_hat = boot.theta_hat;

  GraphState st = boot.reference;
  if (!cfg.u0.empty()) st.u = cfg.u0.sample(m.grid);
  st.u0_at_p = st.u.value(0);
  MonitorContext ctx = cfg.monitors;
  ctx.u0_at_p = st.u0_at_p;

  // Companion start: 1 + configured perturbation (default 0.1 cos q^1).
  TrigPoly v0p;
  if (const auto it = cfg.raw.find("harnack.v0"); it != cfg.raw.end())
    v0p = TrigPoly::parse(it->second, cfg.n);
  else
    v0p = TrigPoly(std::vector<TrigTerm>{TrigTerm{0.1, {1, 0, 0}, kTwoPi / 4.0}});

  CompanionState comp;
  comp.v = v0p.sample(m.grid);
  {
    double* vp = comp.v.plane(0);
    for (std::size_t p = 0; p < comp.v.points(); ++p) vp[p] += 1.0;
    if (!(inf(std::span<const double>(vp, comp.v.points())) > 0.0))
      throw config_error("harnack.v0 must keep 1 + v0 strictly positive");
  }

  const double dt = stable_dt(m, cfg.flow.cfl);
  const long steps = static_cast<long>(std::ceil(cfg.flow.t_max / dt));

  std::vector<MonitorSample> samples;
  std::vector<double> sup_v, inf_v, f_series, f_t;
  int violations = 0;
  double sup_v_t1 = 0.0, inf_v_t2 = 0.0;
  const double t1 = 0.25 * cfg.flow.t_max, t2 = 0.5 * cfg.flow.t_max;

  for (long step = 0; step <= steps; ++step) {
    const AngleBundle b = analyze_graph(st, m);
    if (step % cfg.flow.sample_every == 0 || step == steps) {
      samples.push_back(scalar_monitors(st, m, b, ctx));
      const std::span<const double> vs(comp.v.plane(0), comp.v.points());
      const double sv = sup(vs), iv = inf(vs);
      if (!sup_v.empty() && (sv > sup_v.back() + 1e-12 || iv < inf_v.back() - 1e-12))
        ++violations;
      sup_v.push_back(sv);
      inf_v.push_back(iv);
      f_t.push_back(comp.t);
      f_series.push_back(harnack_functional(comp, b.eta_inv, m, cfg.alpha));
      if (std::fabs(comp.t - t1) <= 0.5 * dt * cfg.flow.sample_every) sup_v_t1 = sv;
      if (std::fabs(comp.t - t2) <= 0.5 * dt * cfg.flow.sample_every) inf_v_t2 = iv;
    }
    if (step == steps) break;
    companion_step(comp, b.eta_inv, m, dt);
    st = step_rk4(st, m, dt);
  }

  double f_over = 0.0;
  for (std::size_t k = 0; k < f_series.size(); ++k)
    f_over = std::max(f_over, f_series[k] / (1.0 + f_t[k]));

  std::ostringstream rep;
  rep << fmt("companion max-principle violations: %.0f\n", static_cast<double>(violations));
  rep << fmt("sup v: %.7g -> %.7g\n", sup_v.front(), sup_v.back());
  rep << fmt("inf v: %.7g -> %.7g\n", inf_v.front(), inf_v.back());
  if (sup_v_t1 > 0.0 && inf_v_t2 > 0.0)
    rep << fmt("two-time comparison sup v(t1)/inf v(t2) = %.7g (t1 = %.3g, t2 = %.3g)\n",
               sup_v_t1 / inf_v_t2, t1, t2);
  rep << fmt("sup_t F/(1+t): %.7g\n", f_over);

  ScenarioOutcome out;
  out.termination = Termination::TMax;
  out.samples = std::move(samples);
  out.report = rep.str();
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, &st, &m.grid);
  return out;
}

ScenarioOutcome scenario_convergence(ExperimentConfig cfg, const MetricField& m) {
  BootstrapResult boot = run_bootstrap(cfg, m);
  cfg.monitors.theta_hat = boot.theta_hat;

  GraphState st = boot.reference;
  st.u = cfg.u0.sample(m.grid);
  st.u0_at_p = st.u.value(0);
  MonitorContext ctx = cfg.monitors;
  ctx.u0_at_p = st.u0_at_p;

  std::vector<MonitorSample> samples;
  std::vector<ScalarField> tildes;
  std::vector<double> times;
  FlowResult fr = run_flow(st, m, cfg.flow, [&](const GraphState& s, const AngleBundle& b, long) {
    samples.push_back(scalar_monitors(s, m, b, ctx));
    ScalarField ut;
    double mean = 0.0;
    recenter(s.u, m, ut, mean);
    tildes.push_back(std::move(ut));
    times.push_back(s.t);
  });

  // Distance of the recentred potential to its final value.
  std::vector<double> dist(tildes.size(), 0.0);
  if (!tildes.empty()) {
    const ScalarField& last = tildes.back();
    for (std::size_t k = 0; k < tildes.size(); ++k) {
      double d = 0.0;
      for (std::size_t p = 0; p < last.points(); ++p)
        d = std::max(d, std::fabs(tildes[k].value(p) - last.value(p)));
      dist[k] = d;
    }
  }

  const double t_end = times.empty() ? 0.0 : times.back();
  DecayFit fit_theta = try_theta_dot_fit(samples);
  DecayFit fit_u;
  try {
    fit_u = decay_fit(times, dist, 1.0, 0.6 * t_end);
  } catch (const config_error&) {
  }

  std::ostringstream rep;
  rep << fmt("osc(theta-dot) fit: C1 = %.6g, C2 = %.6g, R2 = %.6g\n", fit_theta.c1, fit_theta.c2,
             fit_theta.r_squared);
  rep << fmt("|u_tilde(t) - u_tilde(end)| fit: C1 = %.6g, C2 = %.6g, R2 = %.6g\n", fit_u.c1,
             fit_u.c2, fit_u.r_squared);
  if (fit_theta.c2 > 0.0 && fit_u.c2 > 0.0)
    rep << fmt("rate agreement |1 - C2_u/C2_theta|: %.4g\n",
               std::fabs(1.0 - fit_u.c2 / fit_theta.c2));

  ScenarioOutcome out;
  out.termination = fr.termination;
  out.samples = std::move(samples);
  out.report = rep.str();
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, &fr.state, &m.grid);
  return out;
}

}  // namespace

ScenarioOutcome run_scenario(const ExperimentConfig& cfg) {
  const PeriodicGrid grid(cfg.n, cfg.N);
  const MetricField m = build_metric(cfg.metric, grid);
  switch (cfg.scenario) {
    case Scenario::Bootstrap: return scenario_bootstrap(cfg, m);
    case Scenario::Stability: return scenario_stability(cfg, m);
    case Scenario::Uniqueness: return scenario_uniqueness(cfg, m);
    case Scenario::LemmaCheck: return scenario_lemma_check(cfg, m);
    case Scenario::Harnack: return scenario_harnack(cfg, m);
    case Scenario::Convergence: return scenario_convergence(cfg, m);
  }
  throw config_error("unknown scenario");
}

ScenarioOutcome resume_run(const std::string& checkpoint_path) {
  namespace fs = std::filesystem;
  const fs::path ckpt(checkpoint_path);
  const fs::path dir = ckpt.has_parent_path() ? ckpt.parent_path() : fs::path(".");
  const fs::path cfg_path = dir / "config.resolved.cfg";
  if (!fs::exists(cfg_path))
    throw config_error("resume needs " + cfg_path.string() + " next to the checkpoint");

  ExperimentConfig cfg = ExperimentConfig::from_file(cfg_path.string());
  PeriodicGrid grid;
  GraphState st = load_checkpoint(checkpoint_path, grid);
  if (grid.dim != cfg.n || grid.points_per_axis != cfg.N)
    throw config_error("checkpoint grid does not match the resolved config");
  st.u0_at_p = cfg.monitors.u0_at_p;

  const MetricField m = build_metric(cfg.metric, grid);
  MonitoredRun run = flow_with_monitors(st, m, cfg.flow, cfg.monitors);

  ScenarioOutcome out;
  out.termination = run.flow.termination;
  out.samples = std::move(run.samples);
  out.report = "resumed from " + checkpoint_path + "\n";
  cfg.out_dir = (dir / "resume").string();
  emit_outputs(cfg.out_dir, cfg, out.samples, out.termination, out.report, &run.flow.state,
               &grid);
  return out;
}

}  // namespace glmcf
