// Copyright 2026 The mvpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Deliberately thin: it parses arguments and talks
// to the shared library exclusively through the public C interface.

#include <mvpl/mvpl.h>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<double> label_rate;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_strategy) {
  cmd->add_option("--config", args.config, "JSON config file")->required();
  cmd->add_option("--out", args.out, "output directory")->required();
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&args](const std::uint64_t& v) { args.seed = v; },
      "override the config seed");
  cmd->add_option_function<double>(
      "--label-rate", [&args](const double& v) { args.label_rate = v; },
      "override the config ground-truth labeling rate");
  if (with_strategy) {
    cmd->add_option_function<std::string>(
        "--strategy", [&args](const std::string& v) { args.strategy = v; },
        "override the config strategy");
  }
}

mvpl_overrides to_overrides(const CommonArgs& args) {
  mvpl_overrides overrides{};
  if (args.seed) {
    overrides.has_seed = 1;
    overrides.seed = *args.seed;
  }
  if (args.label_rate) {
    overrides.has_label_rate = 1;
    overrides.label_rate = *args.label_rate;
  }
  overrides.strategy = args.strategy ? args.strategy->c_str() : nullptr;
  return overrides;
}

int finish(mvpl_rc rc, char* summary) {
  if (summary) {
    std::cout << summary << "\n";
    mvpl_string_free(summary);
  }
  if (rc != MVPL_OK) {
    std::cerr << "error: " << mvpl_rc_name(rc) << ": " << mvpl_last_error()
              << "\n";
  }
  return mvpl_rc_exit_code(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("mvpl ") + mvpl_version() +
               " - multi-view pseudo-labeling for semi-supervised speech "
               "classification"};
  app.require_subcommand(1);

  CommonArgs synth_args, fad_args, pseudo_args, train_args;
  std::string fad_item;
  std::vector<std::string> report_inputs;
  std::string report_out;

  CLI::App* synth =
      app.add_subcommand("synth", "generate a deterministic synthetic corpus");
  add_common(synth, synth_args, /*with_strategy=*/false);

  CLI::App* fad = app.add_subcommand(
      "fad", "score unlabeled items against the labeled classes");
  add_common(fad, fad_args, /*with_strategy=*/false);
  fad->add_option("--item", fad_item, "score a single pool item");

  CLI::App* pseudo = app.add_subcommand(
      "pseudo-label", "produce acoustic/linguistic pseudo-labels and the "
                      "confidence partition");
  add_common(pseudo, pseudo_args, /*with_strategy=*/false);

  CLI::App* train =
      app.add_subcommand("train", "run a training strategy end to end");
  add_common(train, train_args, /*with_strategy=*/true);

  CLI::App* report = app.add_subcommand(
      "report", "render run histories into a comparison table");
  report->add_option("inputs", report_inputs, "runs.jsonl or history.json files")
      ->required();
  report->add_option("--out", report_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage problems are validation failures
  }

  char* summary = nullptr;
  mvpl_rc rc = MVPL_E_INVALID_INPUT;
  if (synth->parsed()) {
    const mvpl_overrides overrides = to_overrides(synth_args);
    rc = mvpl_run_synth(synth_args.config.c_str(), synth_args.out.c_str(),
                        &overrides, &summary);
  } else if (fad->parsed()) {
    const mvpl_overrides overrides = to_overrides(fad_args);
    rc = mvpl_run_fad(fad_args.config.c_str(), fad_args.out.c_str(),
                      fad_item.empty() ? nullptr : fad_item.c_str(), &overrides,
                      &summary);
  } else if (pseudo->parsed()) {
    const mvpl_overrides overrides = to_overrides(pseudo_args);
    rc = mvpl_run_pseudo_label(pseudo_args.config.c_str(), pseudo_args.out.c_str(),
                               &overrides, &summary);
  } else if (train->parsed()) {
    const mvpl_overrides overrides = to_overrides(train_args);
    rc = mvpl_run_train(train_args.config.c_str(), train_args.out.c_str(),
                        &overrides, &summary);
  } else if (report->parsed()) {
    std::vector<const char*> inputs;
    inputs.reserve(report_inputs.size());
    for (const std::string& path : report_inputs) inputs.push_back(path.c_str());
    rc = mvpl_run_report(inputs.data(), inputs.size(), report_out.c_str(),
                         &summary);
  }
  return finish(rc, summary);
}
