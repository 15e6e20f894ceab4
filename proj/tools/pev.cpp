// Copyright 2026 The PEv Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pev/cli.hpp"

int main(int argc, char **argv) {
    pev::cli::Environment env;
    if (const char *seed = std::getenv("PEV_SEED")) {
        env.seed = seed;
    }
    const std::vector<std::string> args(argv + 1, argv + argc);
    return pev::cli::run_cli(args, std::cout, std::cerr, env);
}
