// Copyright 2026 The roslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Regenerates the bundled sample corpus (data/sample). The output is a pure
// function of the seed, so a re-run over a clean tree is a no-op diff.

#include <iostream>

#include "CLI11.hpp"
#include "roslu/data/corpus_gen.hpp"
#include "roslu/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"deterministic sample corpus generator"};
  std::string out = "data/sample";
  roslu::CorpusGenConfig cfg;
  app.add_option("--out", out, "output root (train/ valid/ test/)");
  app.add_option("--train", cfg.n_train, "training sentences");
  app.add_option("--valid", cfg.n_valid, "validation sentences");
  app.add_option("--test", cfg.n_test, "test sentences");
  app.add_option("--seed", cfg.seed, "generation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    roslu::generate_sample_corpus(out, cfg);
    std::cout << "wrote " << cfg.n_train << "/" << cfg.n_valid << "/"
              << cfg.n_test << " sentences under " << out << "\n";
  } catch (const roslu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
