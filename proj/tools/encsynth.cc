/*
 * Copyright 2026 The encsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Experiment driver: ground truth, plaintext and encrypted Z-learning,
// generic-RL baselines and run comparison.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "encsynth/common/error.h"
#include "encsynth/experiments/commands.h"
#include "encsynth/re_rl/linear_system.h"
#include "encsynth/synth/client.h"
#include "encsynth/synth/transport.h"

namespace {

using encsynth::experiments::ExperimentConfig;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kConvergence = 3, kSession = 4, kIo = 5 };

template <typename T>
CLI::Option* Flag(CLI::App& app, const std::string& name, T& value, const std::string& help) {
  std::string env = "ENCSYNTH_" + name;
  for (char& c : env) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return app.add_option("--" + name, value, help)->envname(env)->capture_default_str();
}

void AddOptions(CLI::App& app, ExperimentConfig& c) {
  Flag(app, "maze", c.maze, "maze file (`width height` then rows of . T G)");
  Flag(app, "step-cost", c.step_cost, "cost of every move");
  Flag(app, "lambda", c.lambda, "temperature of the relative-entropy penalty");
  Flag(app, "kappa", c.kappa, "learning-rate constant: alpha = kappa / (kappa + n)");
  Flag(app, "episodes", c.episodes, "training episodes");
  Flag(app, "max-steps", c.max_steps, "episode length cap");
  Flag(app, "seed", c.seed, "episode sampling seed");
  Flag(app, "backend", c.backend, "exact | emulator | rlwe");
  Flag(app, "ring-dimension", c.ring_dimension, "HE ring dimension N");
  Flag(app, "chain-bits", c.chain_bits, "modulus chain bit sizes")->delimiter(',');
  Flag(app, "log2-scale", c.log2_scale, "log2 of the encoding scale");
  Flag(app, "exp-degree", c.exp_degree, "degree of the exp approximation");
  Flag(app, "exp-squarings", c.exp_squarings, "squarings after the polynomial (-1: automatic)");
  Flag(app, "exp-method", c.exp_method, "taylor | chebyshev");
  Flag(app, "noise-sigma", c.noise_sigma, "emulator noise per operation");
  Flag(app, "noise-rescale", c.noise_rescale, "emulator rescale rounding bound");
  Flag(app, "key-seed", c.key_seed, "RLWE secret key seed");
  Flag(app, "connect", c.connect, "host:port of encsynth_server (default: in-process)");
  Flag(app, "error-every", c.error_every, "decrypt the table every k episodes");
  Flag(app, "factor", c.factor, "zlearn cost factor: exact | approx");
  Flag(app, "discount", c.discount, "baselines discount factor");
  Flag(app, "vi-tol", c.vi_tol, "value iteration residual tolerance");
  Flag(app, "q-steps", c.q_steps, "Q-learning steps");
  Flag(app, "q-epsilon", c.q_epsilon, "Q-learning exploration rate");
  Flag(app, "mc-sweeps", c.mc_sweeps, "Monte-Carlo ES sweeps");
  Flag(app, "mc-episodes", c.mc_episodes, "Monte-Carlo ES rollouts per pair");
  Flag(app, "checkpoints", c.checkpoints, "episodes with value snapshots")->delimiter(',');
  Flag(app, "out", c.out, "output directory");
}

int Run(int argc, char** argv) {
  CLI::App app{"encsynth: encrypted relative-entropy policy synthesis experiments"};
  app.set_config("--config", "", "config file (TOML or INI; keys are the flag names)");
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig config;
  std::vector<std::uint64_t> seeds;
  AddOptions(app, config);
  app.add_option("--seeds", seeds, "run once per seed in <out>/seed_<s>")
      ->delimiter(',')
      ->envname("ENCSYNTH_SEEDS");

  auto* vi = app.add_subcommand("vi", "ground truth Z* and V* by lsvi and a direct solve");
  auto* zlearn = app.add_subcommand("zlearn", "plaintext Z-learning");
  auto* encrypted = app.add_subcommand("encrypted", "encrypted Z-learning session");
  auto* baselines = app.add_subcommand("baselines", "value iteration, Q-learning, MC-ES");
  auto* compare = app.add_subcommand("compare", "join run directories into one CSV");
  std::vector<std::string> run_dirs;
  compare->add_option("runs", run_dirs, "run directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  using namespace encsynth;
  try {
    if (compare->parsed()) {
      experiments::CmdCompare(run_dirs, config.out);
      return kOk;
    }
    std::function<void(const ExperimentConfig&)> command;
    if (vi->parsed()) command = [](const ExperimentConfig& c) { experiments::CmdVi(c); };
    if (zlearn->parsed()) command = [](const ExperimentConfig& c) { experiments::CmdZlearn(c); };
    if (baselines->parsed()) command = [](const ExperimentConfig& c) { experiments::CmdBaselines(c); };
    if (encrypted->parsed()) {
      command = [](const ExperimentConfig& c) {
        const auto r = experiments::CmdEncrypted(c);
        std::fprintf(stderr, "session: %llu transitions, %llu refresh rounds, %.2f s\n",
                     static_cast<unsigned long long>(r.server.transitions),
                     static_cast<unsigned long long>(r.server.refresh_rounds),
                     r.client.wall_seconds);
      };
    }
    if (seeds.empty()) {
      command(config);
    } else {
      experiments::RunSeeds(config, seeds, command);
    }
    return kOk;
  } catch (const synth::SessionAborted& e) {
    std::cerr << "session aborted: " << e.what() << "\n";
    return kSession;
  } catch (const synth::ServerRejected& e) {
    std::cerr << e.what() << "\n";
    return e.code() == synth::ErrorCode::kConfig ? kConfig : kSession;
  } catch (const synth::TransportError& e) {
    std::cerr << "transport: " << e.what() << "\n";
    return kSession;
  } catch (const NonConvergence& e) {
    std::cerr << "convergence: " << e.what() << "\n";
    return kConvergence;
  } catch (const re::DegenerateSystem& e) {
    std::cerr << "convergence: " << e.what() << "\n";
    return kConvergence;
  } catch (const IoError& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
