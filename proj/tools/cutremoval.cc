// Copyright 2026 The cutremoval Authors.
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

// cutremoval gen|oracle|collect|train|eval|analyze [flags]
//
// Every flag can also be given in a key=value file passed with --config;
// flags on the command line win.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <glog/logging.h>

#include "CLI11.hpp"
#include "cutremoval/bench.h"

namespace {

using namespace cutremoval;

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;

  CLI::App app{"Cutting-plane experiments with cut removal"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file; flags override it");

  ExperimentConfig cfg;
  std::string family = "packing";
  std::string policies;
  std::string splits;
  std::string arith = "float";
  std::string hidden = "32,32";
  int standardize = 1;

  app.add_option("--family", family, "family name, comma list or 'all'")
      ->capture_default_str();
  app.add_option("--preset", cfg.preset, "tiny|small|train|large")->capture_default_str();
  app.add_option("--count", cfg.count, "test instances")->capture_default_str();
  app.add_option("--train-count", cfg.train_count, "training instances")
      ->capture_default_str();
  app.add_option("--val-count", cfg.val_count, "validation instances")
      ->capture_default_str();
  app.add_option("--split", splits, "comma list of train,val,test");
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--policies", policies, "comma list of policy names");
  app.add_option("--max-iters", cfg.max_iters, "cutting-plane iterations")
      ->capture_default_str();
  app.add_option("--model", cfg.model, "model file (default <out>/<family>/model.json)");
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--input", cfg.input, "instance file or directory to use instead");
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  app.add_option("--arith", arith, "float|rational")
      ->check(CLI::IsMember({"float", "rational"}))
      ->capture_default_str();
  app.add_option("--lr", cfg.train.learning_rate, "SGD step size")->capture_default_str();
  app.add_option("--epochs", cfg.train.epochs, "training epochs")->capture_default_str();
  app.add_option("--batch", cfg.train.batch_size, "minibatch size")->capture_default_str();
  app.add_option("--patience", cfg.train.patience, "early stopping patience")
      ->capture_default_str();
  app.add_option("--train-seed", cfg.train.seed, "initialization and shuffling seed")
      ->capture_default_str();
  app.add_option("--hidden", hidden, "hidden layer widths")->capture_default_str();
  app.add_option("--standardize-targets", standardize, "1 to z-score targets")
      ->capture_default_str();
  app.add_option("--bins", cfg.bins, "normalized-position columns in analyze")
      ->capture_default_str();
  app.add_option("--oracle-node-limit", cfg.oracle_node_limit,
                 "branch-and-bound node limit")
      ->capture_default_str();

  const char* commands[][2] = {
      {"gen", "generate instance splits"},
      {"oracle", "cache integer optima"},
      {"collect", "record look-ahead trajectories on train and val"},
      {"train", "build datasets and fit the cut scorer"},
      {"eval", "mean IGC curves per policy"},
      {"analyze", "cutpool improvement distribution matrices"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1])->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.families.clear();
    if (family == "all") {
      cfg.families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
    } else {
      for (const std::string& name : SplitList(family)) {
        const auto f = ParseFamily(name);
        if (!f) throw std::invalid_argument("unknown family '" + name + "'");
        cfg.families.push_back(*f);
      }
    }
    if (!IsKnownPreset(cfg.preset)) {
      throw std::invalid_argument("unknown preset '" + cfg.preset + "'");
    }
    for (const std::string& name : SplitList(policies)) {
      const auto p = ParsePolicy(name);
      if (!p) throw std::invalid_argument("unknown policy '" + name + "'");
      cfg.policies.push_back(*p);
    }
    cfg.splits = SplitList(splits);
    cfg.arith = arith == "rational" ? Arithmetic::kRational : Arithmetic::kFloat;
    cfg.train.hidden.clear();
    for (const std::string& h : SplitList(hidden)) cfg.train.hidden.push_back(std::stoi(h));
    cfg.train.standardize_targets = standardize != 0;
    if (cfg.count < 1 || cfg.train_count < 1 || cfg.val_count < 1) {
      throw std::invalid_argument("counts must be at least 1");
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "gen") CmdGen(cfg);
    if (cmd == "oracle") CmdOracle(cfg);
    if (cmd == "collect") CmdCollect(cfg);
    if (cmd == "train") CmdTrain(cfg);
    if (cmd == "eval") CmdEval(cfg);
    if (cmd == "analyze") CmdAnalyze(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
