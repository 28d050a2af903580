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

#include "cutremoval/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <glog/logging.h>

#include "json.hpp"

namespace cutremoval {
namespace {

using nlohmann::json;

double Sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

void AllocateLayers(MlpParams* p) {
  p->weights.assign(p->num_layers(), {});
  p->biases.assign(p->num_layers(), {});
  for (int l = 0; l < p->num_layers(); ++l) {
    p->weights[l].assign(std::size_t(p->layer_dims[l + 1]) * p->layer_dims[l], 0.0);
    p->biases[l].assign(p->layer_dims[l + 1], 0.0);
  }
}

std::vector<double> Standardize(const MlpParams& p, const FeatureVector& f) {
  std::vector<double> z(kNumFeatures);
  for (int i = 0; i < kNumFeatures; ++i) {
    z[i] = (f[i] - p.feature_mean[i]) / p.feature_std[i];
  }
  return z;
}

struct MeanStd {
  double mean = 0.0;
  double std = 1.0;
};

// Population statistics; a (near) constant column gets std 1.
MeanStd Moments(std::span<const double> v) {
  MeanStd m;
  if (v.empty()) return m;
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double sq = 0.0;
  for (double x : v) sq += (x - m.mean) * (x - m.mean);
  const double s = std::sqrt(sq / v.size());
  m.std = s > 1e-12 ? s : 1.0;
  return m;
}

}  // namespace

int MlpParams::num_params() const {
  int total = 0;
  for (int l = 0; l < num_layers(); ++l) {
    total += layer_dims[l + 1] * layer_dims[l] + layer_dims[l + 1];
  }
  return total;
}

MlpParams ZeroMlp(std::vector<int> layer_dims) {
  MlpParams p;
  p.layer_dims = std::move(layer_dims);
  AllocateLayers(&p);
  return p;
}

MlpParams InitMlp(uint64_t seed, std::vector<int> layer_dims) {
  MlpParams p = ZeroMlp(std::move(layer_dims));
  p.seed = seed;
  std::mt19937_64 rng(seed);
  for (int l = 0; l < p.num_layers(); ++l) {
    const double r = 1.0 / std::sqrt(double(p.layer_dims[l]));
    std::uniform_real_distribution<double> u(-r, r);
    for (double& w : p.weights[l]) w = u(rng);
    for (double& b : p.biases[l]) b = u(rng);
  }
  return p;
}

double ForwardStandardized(const MlpParams& p, std::span<const double> z) {
  std::vector<double> h(z.begin(), z.end());
  std::vector<double> next;
  for (int l = 0; l < p.num_layers(); ++l) {
    const int in = p.layer_dims[l], out = p.layer_dims[l + 1];
    next.assign(out, 0.0);
    for (int o = 0; o < out; ++o) {
      double s = p.biases[l][o];
      const double* w = &p.weights[l][std::size_t(o) * in];
      for (int i = 0; i < in; ++i) s += w[i] * h[i];
      next[o] = l + 1 < p.num_layers() ? Sigmoid(s) : s;
    }
    h.swap(next);
  }
  return h[0];
}

double Forward(const MlpParams& params, const FeatureVector& f) {
  const std::vector<double> z = Standardize(params, f);
  return ForwardStandardized(params, z) * params.target_std + params.target_mean;
}

std::vector<double> Flatten(const MlpParams& p) {
  std::vector<double> flat;
  flat.reserve(p.num_params());
  for (int l = 0; l < p.num_layers(); ++l) {
    flat.insert(flat.end(), p.weights[l].begin(), p.weights[l].end());
    flat.insert(flat.end(), p.biases[l].begin(), p.biases[l].end());
  }
  return flat;
}

void Unflatten(std::span<const double> flat, MlpParams* p) {
  CHECK_EQ(int(flat.size()), p->num_params());
  std::size_t at = 0;
  for (int l = 0; l < p->num_layers(); ++l) {
    for (double& w : p->weights[l]) w = flat[at++];
    for (double& b : p->biases[l]) b = flat[at++];
  }
}

double LossAndGradient(const MlpParams& p,
                       std::span<const std::vector<double>> inputs,
                       std::span<const double> targets,
                       std::vector<double>* grad) {
  const int L = p.num_layers();
  const std::size_t count = inputs.size();
  if (grad != nullptr) grad->assign(p.num_params(), 0.0);
  if (count == 0) return 0.0;

  // Offsets of each layer's weights and biases in the flat vector.
  std::vector<std::size_t> w_off(L), b_off(L);
  std::size_t at = 0;
  for (int l = 0; l < L; ++l) {
    w_off[l] = at;
    at += p.weights[l].size();
    b_off[l] = at;
    at += p.biases[l].size();
  }

  double loss = 0.0;
  std::vector<std::vector<double>> act(L + 1);
  std::vector<double> delta, prev_delta;
  for (std::size_t s = 0; s < count; ++s) {
    act[0] = inputs[s];
    for (int l = 0; l < L; ++l) {
      const int in = p.layer_dims[l], out = p.layer_dims[l + 1];
      act[l + 1].assign(out, 0.0);
      for (int o = 0; o < out; ++o) {
        double v = p.biases[l][o];
        const double* w = &p.weights[l][std::size_t(o) * in];
        for (int i = 0; i < in; ++i) v += w[i] * act[l][i];
        act[l + 1][o] = l + 1 < L ? Sigmoid(v) : v;
      }
    }
    const double err = act[L][0] - targets[s];
    loss += err * err;
    if (grad == nullptr) continue;

    delta.assign(1, 2.0 * err / count);
    for (int l = L - 1; l >= 0; --l) {
      const int in = p.layer_dims[l], out = p.layer_dims[l + 1];
      prev_delta.assign(in, 0.0);
      for (int o = 0; o < out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        (*grad)[b_off[l] + o] += d;
        const double* w = &p.weights[l][std::size_t(o) * in];
        double* g = &(*grad)[w_off[l] + std::size_t(o) * in];
        for (int i = 0; i < in; ++i) {
          g[i] += d * act[l][i];
          prev_delta[i] += d * w[i];
        }
      }
      if (l > 0) {
        for (int i = 0; i < in; ++i) {
          prev_delta[i] *= act[l][i] * (1.0 - act[l][i]);
        }
      }
      delta.swap(prev_delta);
    }
  }
  return loss / count;
}

TrainResult TrainSgd(std::span<const TrainSample> train,
                     std::span<const TrainSample> val,
                     const TrainHyperparams& hp) {
  if (train.empty()) throw std::invalid_argument("empty training set");
  std::vector<int> dims = {kNumFeatures};
  dims.insert(dims.end(), hp.hidden.begin(), hp.hidden.end());
  dims.push_back(1);
  MlpParams params = InitMlp(hp.seed, dims);

  for (int i = 0; i < kNumFeatures; ++i) {
    std::vector<double> column(train.size());
    for (std::size_t s = 0; s < train.size(); ++s) column[s] = train[s].features[i];
    const MeanStd m = Moments(column);
    params.feature_mean[i] = m.mean;
    params.feature_std[i] = m.std;
  }
  if (hp.standardize_targets) {
    std::vector<double> y(train.size());
    for (std::size_t s = 0; s < train.size(); ++s) y[s] = train[s].target;
    const MeanStd m = Moments(y);
    params.target_mean = m.mean;
    params.target_std = m.std;
  }

  auto prepare = [&](std::span<const TrainSample> data, std::vector<std::vector<double>>* z,
                     std::vector<double>* y) {
    z->resize(data.size());
    y->resize(data.size());
    for (std::size_t s = 0; s < data.size(); ++s) {
      (*z)[s] = Standardize(params, data[s].features);
      (*y)[s] = (data[s].target - params.target_mean) / params.target_std;
    }
  };
  std::vector<std::vector<double>> z_train, z_val;
  std::vector<double> y_train, y_val;
  prepare(train, &z_train, &y_train);
  prepare(val, &z_val, &y_val);
  // Without a validation split, early stopping watches the training loss.
  const bool has_val = !val.empty();

  TrainResult result;
  TrainReport& report = result.report;
  auto record = [&](const MlpParams& p) {
    const double tl = LossAndGradient(p, z_train, y_train, nullptr);
    const double vl = has_val ? LossAndGradient(p, z_val, y_val, nullptr) : tl;
    if (!std::isfinite(tl) || !std::isfinite(vl)) {
      throw Diverged("training loss became non-finite");
    }
    report.train_loss.push_back(tl);
    report.val_loss.push_back(vl);
    return vl;
  };

  double best = record(params);
  result.params = params;
  report.best_epoch = 0;

  std::mt19937_64 rng(hp.seed ^ 0x5eedULL);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch = std::max(1, hp.batch_size);
  std::vector<double> flat = Flatten(params);
  std::vector<double> grad;
  std::vector<std::vector<double>> bz;
  std::vector<double> by;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      bz.clear();
      by.clear();
      for (std::size_t k = start; k < end; ++k) {
        bz.push_back(z_train[order[k]]);
        by.push_back(y_train[order[k]]);
      }
      const double loss = LossAndGradient(params, bz, by, &grad);
      if (!std::isfinite(loss)) throw Diverged("mini-batch loss became non-finite");
      for (std::size_t i = 0; i < flat.size(); ++i) flat[i] -= hp.learning_rate * grad[i];
      Unflatten(flat, &params);
    }
    const double vl = record(params);
    VLOG(1) << "epoch " << epoch << " train " << report.train_loss.back()
            << " val " << vl;
    if (vl < best) {
      best = vl;
      report.best_epoch = epoch;
      result.params = params;
    } else if (epoch - report.best_epoch >= hp.patience) {
      report.stopped_early = true;
      break;
    }
  }
  result.params.metadata["learning_rate"] = std::to_string(hp.learning_rate);
  result.params.metadata["batch_size"] = std::to_string(hp.batch_size);
  result.params.metadata["epochs_run"] = std::to_string(report.train_loss.size() - 1);
  result.params.metadata["best_epoch"] = std::to_string(report.best_epoch);
  result.params.metadata["train_samples"] = std::to_string(train.size());
  result.params.metadata["val_samples"] = std::to_string(val.size());
  return result;
}

std::string SerializeModel(const MlpParams& p) {
  json j;
  j["format"] = "cutremoval-mlp";
  j["version"] = kModelFormatVersion;
  j["num_features"] = kNumFeatures;
  j["feature_names"] = json::array();
  for (std::string_view name : FeatureNames()) j["feature_names"].push_back(name);
  j["layer_dims"] = p.layer_dims;
  j["activation"] = "sigmoid";
  j["weights"] = p.weights;
  j["biases"] = p.biases;
  j["feature_mean"] = p.feature_mean;
  j["feature_std"] = p.feature_std;
  j["target_mean"] = p.target_mean;
  j["target_std"] = p.target_std;
  j["seed"] = p.seed;
  j["metadata"] = p.metadata;
  return j.dump(1) + "\n";
}

MlpParams ParseModel(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "cutremoval-mlp") {
      throw SchemaMismatch("not a cutremoval model file");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw SchemaMismatch("model version " + std::to_string(version) +
                           ", expected " + std::to_string(kModelFormatVersion));
    }
    if (j.at("num_features").get<int>() != kNumFeatures) {
      throw SchemaMismatch("model expects a different feature count");
    }
    MlpParams p;
    p.layer_dims = j.at("layer_dims").get<std::vector<int>>();
    if (p.layer_dims.size() < 2 || p.layer_dims.front() != kNumFeatures ||
        p.layer_dims.back() != 1) {
      throw SchemaMismatch("layer dims must run from 14 inputs to 1 output");
    }
    p.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    p.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    p.feature_mean = j.at("feature_mean").get<std::vector<double>>();
    p.feature_std = j.at("feature_std").get<std::vector<double>>();
    p.target_mean = j.at("target_mean").get<double>();
    p.target_std = j.at("target_std").get<double>();
    p.seed = j.at("seed").get<uint64_t>();
    p.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    if (int(p.weights.size()) != p.num_layers() || int(p.biases.size()) != p.num_layers()) {
      throw SchemaMismatch("layer count disagrees with layer dims");
    }
    for (int l = 0; l < p.num_layers(); ++l) {
      if (p.weights[l].size() != std::size_t(p.layer_dims[l + 1]) * p.layer_dims[l] ||
          int(p.biases[l].size()) != p.layer_dims[l + 1]) {
        throw SchemaMismatch("layer " + std::to_string(l) + " has wrong shape");
      }
    }
    if (int(p.feature_mean.size()) != kNumFeatures ||
        int(p.feature_std.size()) != kNumFeatures) {
      throw SchemaMismatch("normalization stats have wrong length");
    }
    return p;
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const MlpParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SerializeModel(params);
}

MlpParams LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseModel(buffer.str());
}

}  // namespace cutremoval
