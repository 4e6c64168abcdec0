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

#include "aflsim/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace aflsim {

namespace {

// Per-purpose stream tags; every random decision has its own
// (tag, round, client) stream, so the trace is independent of the order
// in which client work executes.
constexpr std::uint64_t kTagSelect = 0x10;
constexpr std::uint64_t kTagStale = 0x11;
constexpr std::uint64_t kTagDelay = 0x12;
constexpr std::uint64_t kTagShuffle = 0x13;

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::size_t ExperimentConfig::participants() const {
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(clients)));
}

std::vector<double> ExperimentConfig::client_powers() const {
  if (!powers.empty()) return powers;
  std::vector<double> p(clients);
  for (std::size_t c = 0; c < clients; ++c) p[c] = (c % 2 == 0) ? 125.0 : 45.0;
  return p;
}

void validate(const ExperimentConfig& config) {
  if (config.clients == 0) throw ConfigError("C must be at least 1");
  if (config.rounds == 0) throw ConfigError("rounds must be at least 1");
  if (config.local_epochs == 0) throw ConfigError("I must be at least 1");
  if (config.batch == 0) throw ConfigError("batch must be at least 1");
  if (config.dim == 0) throw ConfigError("d must be at least 1");
  if (config.samples == 0) throw ConfigError("n must be at least 1");
  if (!(config.gamma0 > 0.0)) throw ConfigError("gamma0 must be positive");
  if (config.alpha < 0.0 || config.alpha > 1.0) throw ConfigError("alpha must lie in [0, 1]");
  if (!(config.fraction > 0.0) || config.fraction > 1.0) {
    throw ConfigError("fraction must lie in (0, 1]");
  }
  const std::size_t j = config.participants();
  if (j < 1 || j > config.clients) {
    throw ConfigError("round(fraction * C) must select between 1 and C clients");
  }
  if (!(config.zeta > 0.0)) throw ConfigError("zeta must be positive");
  if (config.model.l2_mu < 0.0) throw ConfigError("l2_mu cannot be negative");
  if (config.clients * config.min_per_client > config.samples) {
    throw ConfigError("C * min_per_client exceeds n");
  }
  if (!config.powers.empty() && config.powers.size() != config.clients) {
    throw ConfigError("powers list must have one entry per client");
  }
  if (config.noise_std < 0.0) throw ConfigError("noise_std cannot be negative");
  if (config.constant_lr < 0.0) throw ConfigError("constant_lr cannot be negative");
}

std::vector<int> select_clients(std::size_t clients, std::size_t j, Rng& rng) {
  if (j < 1 || j > clients) throw std::invalid_argument("cannot select that many clients");
  auto picks = rng.sample_without_replacement(clients, j);
  std::vector<int> ids(picks.begin(), picks.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

Simulation::Simulation(ExperimentConfig config) : config_(std::move(config)) {
  validate(config_);
  data_ = config_.model.objective == Objective::kMse
              ? gen_regression_data(config_.samples, config_.dim, config_.seed, config_.noise_std)
              : gen_classification_data(config_.samples, config_.dim, config_.seed);
  partition_ = dirichlet_partition(data_, config_.clients, config_.zeta, config_.seed,
                                   config_.min_per_client);
  scales_ = draw_client_scales(config_.clients, config_.seed);
}

void Simulation::run_round(std::size_t round, GlobalModelHistory& history, TrainingTrace& trace,
                           double& prev_tau) {
  const bool sync = config_.mode == RunMode::kSync;
  const std::size_t j = config_.participants();
  const LrSchedule schedule{config_.gamma0, config_.alpha};

  const double gamma = config_.constant_lr > 0.0
                           ? config_.constant_lr
                           : delay_adjusted_lr(schedule, round, sync ? 0.0 : prev_tau);

  Rng select_rng = Rng::derive(config_.seed, {kTagSelect, round});
  const std::vector<int> selected = select_clients(config_.clients, j, select_rng);

  std::vector<ClientRoundTrace> results(selected.size());
  std::vector<std::pair<int, double>> delays(selected.size());

  DelayModel delay_model = config_.delay;
  delay_model.staleness_max = config_.tau_max;

  std::exception_ptr failure;
  parallel_for(selected.size(), config_.threads, [&](std::size_t slot) {
    try {
      const int client = selected[slot];
      const std::uint64_t cid = static_cast<std::uint64_t>(client);

      std::size_t age = 0;
      if (!sync) {
        Rng stale_rng = Rng::derive(config_.seed, {kTagStale, round, cid});
        age = sample_staleness(delay_model, round, stale_rng);
      }
      const ParamVector& start = history.lookup(age);

      ClientRoundTrace& out = results[slot];
      out.client = client;
      out.snapshot_age = age;

      const auto& shard = partition_.shards[static_cast<std::size_t>(client)];
      Rng shuffle_rng = Rng::derive(config_.seed, {kTagShuffle, round, cid});

      double seconds = 0.0;
      if (delay_model.mode == DelayModel::Mode::kWallclock) {
        const auto t0 = std::chrono::steady_clock::now();
        auto report = local_sgd(start, data_, shard, config_.model, config_.local_epochs,
                                config_.batch, gamma, shuffle_rng,
                                config_.record_iterates ? &out.iterates : nullptr);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.final_params = std::move(report.final_params);
      } else {
        Rng delay_rng = Rng::derive(config_.seed, {kTagDelay, round, cid});
        seconds = sample_delay(delay_model, scales_[static_cast<std::size_t>(client)], delay_rng);
        auto report = local_sgd(start, data_, shard, config_.model, config_.local_epochs,
                                config_.batch, gamma, shuffle_rng,
                                config_.record_iterates ? &out.iterates : nullptr);
        out.final_params = std::move(report.final_params);
      }
      delays[slot] = {client, seconds};
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const DivergenceError& e) {
      throw DivergenceError(round, e.step);
    }
  }

  const double tau = round_delay_spread(delays);
  if (!sync) prev_tau = tau;

  std::vector<ParamVector> finals;
  finals.reserve(results.size());
  for (const auto& r : results) finals.push_back(r.final_params);
  ParamVector next = average_params(finals);

  RoundRecord record;
  record.round = round;
  record.selected = selected;
  record.delays = std::move(delays);
  record.tau_t = tau;
  record.gamma_t = gamma;

  history.push(round + 1, next);
  std::vector<std::size_t> all(data_.rows);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  record.server_loss = shard_loss(next, data_, all, config_.model);

  trace.globals.push_back(next);
  trace.rounds.push_back(std::move(record));
  trace.client_traces.push_back(std::move(results));
}

TrainingTrace Simulation::run() {
  TrainingTrace trace;
  GlobalModelHistory history(config_.tau_max);
  ParamVector initial(config_.dim);
  history.push(0, initial);
  trace.globals.push_back(initial);

  double prev_tau = 0.0;
  for (std::size_t round = 0; round < config_.rounds; ++round) {
    run_round(round, history, trace, prev_tau);
  }
  trace.final_params = trace.globals.back();
  return trace;
}

TrainingTrace run_afl(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.mode = RunMode::kAfl;
  return Simulation(c).run();
}

TrainingTrace run_sync_fl(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.mode = RunMode::kSync;
  return Simulation(c).run();
}

}  // namespace aflsim
