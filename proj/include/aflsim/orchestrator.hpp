/*
 * Copyright (c) 2026, the aflsim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AFLSIM_ORCHESTRATOR_HPP
#define AFLSIM_ORCHESTRATOR_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aflsim/data.hpp"
#include "aflsim/delay.hpp"
#include "aflsim/model.hpp"
#include "aflsim/params.hpp"
#include "aflsim/trainer.hpp"

namespace aflsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { kAfl, kSync };

/// Every knob of one experiment. A config plus a seed fully determines a
/// run, bit for bit, at any thread count.
struct ExperimentConfig {
  std::size_t clients = 10;       // C
  std::size_t rounds = 400;       // total training rounds
  std::size_t local_epochs = 50;  // I
  double gamma0 = 1e-3;
  double alpha = 0.01;            // delay adjustment factor, in [0, 1]
  std::size_t batch = 32;
  std::size_t dim = 10;           // d
  std::size_t samples = 2000;     // n
  double fraction = 0.5;          // participating fraction per round
  std::size_t tau_max = 0;        // staleness bound in rounds
  double zeta = 0.5;              // Dirichlet concentration
  ModelKind model;
  DelayModel delay;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::kAfl;

  double noise_std = 0.2;           // regression target noise
  std::size_t min_per_client = 32;  // defaults to the batch size
  double constant_lr = 0.0;         // > 0 bypasses the schedule (theory runs)
  bool record_iterates = false;     // keep per-step local iterates in the trace
  std::vector<double> powers;       // per-client watts; empty = 125/45 by id parity
  std::size_t threads = 1;          // max concurrent client runs

  std::size_t participants() const;
  std::vector<double> client_powers() const;
};

/// Throws ConfigError describing the first violated invariant.
void validate(const ExperimentConfig& config);

struct ClientRoundTrace {
  int client = 0;
  std::size_t snapshot_age = 0;
  ParamVector final_params;
  std::vector<ParamVector> iterates;  // filled only when record_iterates
};

struct TrainingTrace {
  std::vector<RoundRecord> rounds;
  std::vector<std::vector<ClientRoundTrace>> client_traces;  // per round
  std::vector<ParamVector> globals;  // globals[j] is the model entering round j
  ParamVector final_params;
};

/// Uniformly random size-j subset of {0, ..., clients-1}, returned sorted.
std::vector<int> select_clients(std::size_t clients, std::size_t j, Rng& rng);

/// Owns the generated dataset, partition, and per-client hardware scales
/// for one experiment, and steps the round loop.
class Simulation {
 public:
  explicit Simulation(ExperimentConfig config);

  TrainingTrace run();

  const Dataset& data() const { return data_; }
  const PartitionPlan& partition() const { return partition_; }
  const ExperimentConfig& config() const { return config_; }

 private:
  void run_round(std::size_t round, GlobalModelHistory& history, TrainingTrace& trace,
                 double& prev_tau);

  ExperimentConfig config_;
  Dataset data_;
  PartitionPlan partition_;
  std::vector<double> scales_;
};

/// Runs the asynchronous pipeline regardless of config.mode.
TrainingTrace run_afl(const ExperimentConfig& config);

/// Same pipeline with staleness forced to zero and the schedule fed
/// tau_t = 0 (the alpha term inactive).
TrainingTrace run_sync_fl(const ExperimentConfig& config);

}  // namespace aflsim

#endif  // AFLSIM_ORCHESTRATOR_HPP
