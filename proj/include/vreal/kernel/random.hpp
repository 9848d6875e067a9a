// Copyright 2026 The vreal Authors.
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

// Seeded random programs for property tests and demos.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vreal/kernel/program.hpp"

namespace vreal::kernel {

struct RandomProgramConfig {
  std::size_t depth = 4;
  std::uint64_t arity = 2;  // projections range over 1..arity
  std::uint64_t max_literal = 16;
  bool allow_apply = false;
};

inline Program random_program(std::mt19937_64& rng, const RandomProgramConfig& cfg) {
  auto below = [&](std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); };
  auto leaf = [&]() {
    if (cfg.arity > 0 && below(3) != 0) return Program::proj(1 + below(cfg.arity));
    return Program::lit(Nat(below(cfg.max_literal + 1)));
  };
  if (cfg.depth == 0) return leaf();
  RandomProgramConfig sub = cfg;
  sub.depth = cfg.depth - 1;
  const std::uint64_t ops = cfg.allow_apply ? 9 : 8;
  switch (below(ops)) {
    case 0:
      return leaf();
    case 1:
      return Program::pair(random_program(rng, sub), random_program(rng, sub));
    case 2:
      return Program::fst(random_program(rng, sub));
    case 3:
      return Program::snd(random_program(rng, sub));
    case 4:
      return Program::succ(random_program(rng, sub));
    case 5:
      return Program::if0(random_program(rng, sub), random_program(rng, sub), random_program(rng, sub));
    case 6: {
      // The inner function sees as many arguments as are supplied.
      const std::uint64_t k = 1 + below(2);
      RandomProgramConfig inner = sub;
      inner.arity = k;
      std::vector<Program> args;
      for (std::uint64_t i = 0; i < k; ++i) args.push_back(random_program(rng, sub));
      return Program::comp(random_program(rng, inner), std::move(args));
    }
    case 7:
      return Program::smn_code(random_program(rng, sub), random_program(rng, sub));
    default:
      return Program::apply(random_program(rng, sub), random_program(rng, sub));
  }
}

}  // namespace vreal::kernel
