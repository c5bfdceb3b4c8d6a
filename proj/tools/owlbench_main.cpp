#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "owlbench/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graph-task benchmark pipeline: generate, prompt, run, parse, report, verify"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  bool force = false;

  std::vector<std::string> stage_names = {"generate", "prompt", "run", "parse", "report", "verify"};
  std::vector<CLI::App*> subs;
  for (const auto& name : stage_names) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " stage");
    sub->add_option("--config", config_path, "YAML run configuration")->required();
    sub->add_option("--out", out_override, "Override the configured output directory");
    sub->add_flag("--force", force, "Re-run even when the manifest says the stage is up to date");
    subs.push_back(sub);
  }
  CLI::App* all = app.add_subcommand("all", "Run every stage in order (verify last)");
  all->add_option("--config", config_path, "YAML run configuration")->required();
  all->add_option("--out", out_override, "Override the configured output directory");
  all->add_flag("--force", force, "Re-run all stages");

  CLI11_PARSE(app, argc, argv);

  try {
    owlbench::RunConfig config = owlbench::RunConfig::from_yaml_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;

    std::vector<std::string> to_run;
    if (all->parsed()) {
      to_run = stage_names;
    } else {
      for (size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) to_run.push_back(stage_names[i]);
    }
    bool ok = true;
    for (const auto& name : to_run) {
      auto outcome = owlbench::run_stage(owlbench::stage_from_string(name), config, force);
      std::printf("%s%s\n", outcome.summary.c_str(), outcome.skipped ? " (skipped)" : "");
      for (const auto& f : outcome.outputs) std::printf("  %s\n", f.c_str());
      ok = ok && outcome.ok;
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
