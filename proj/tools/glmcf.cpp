#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glmcf/config.hpp"
#include "glmcf/errors.hpp"
#include "glmcf/scenarios.hpp"

namespace {

int execute(const std::function<glmcf::ScenarioOutcome()>& fn) {
  try {
    const glmcf::ScenarioOutcome out = fn();
    std::printf("%s\n", out.report.c_str());
    std::printf("termination: %s\n", glmcf::termination_name(out.termination));
    return 0;
  } catch (const glmcf::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glmcf: generalized Lagrangian mean curvature flow laboratory"};
  app.require_subcommand(1);
  app.footer("Config keys:\n" + glmcf::ExperimentConfig::describe_keys());

  std::string config_path, out_dir, checkpoint_path;
  std::vector<std::string> overrides;

  CLI::App* run = app.add_subcommand("run", "run the scenario described by a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides experiment.out_dir)");
  run->add_option("--set", overrides, "override a config key, section.key=value");

  CLI::App* resume = app.add_subcommand("resume", "continue a run from a checkpoint");
  resume->add_option("checkpoint", checkpoint_path, "checkpoint file")->required();

  CLI::App* verify = app.add_subcommand("verify", "evolution-identity check (lemma_check)");
  verify->add_option("config", config_path, "config file")->required();
  verify->add_option("--out", out_dir, "output directory");
  verify->add_option("--set", overrides, "override a config key, section.key=value");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed() || verify->parsed()) {
    return execute([&] {
      std::vector<std::string> ovs = overrides;
      if (verify->parsed()) ovs.push_back("experiment.scenario=lemma_check");
      glmcf::ExperimentConfig cfg = glmcf::ExperimentConfig::from_file(config_path, ovs);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      return glmcf::run_scenario(cfg);
    });
  }
  return execute([&] { return glmcf::resume_run(checkpoint_path); });
}
