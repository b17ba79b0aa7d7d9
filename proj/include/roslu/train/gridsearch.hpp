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

#pragma once

#include "roslu/train/trainer.hpp"

namespace roslu {

struct GridRow {
  double alpha = 0.0;
  double dev_f1_clean = 0.0;
  double dev_f1_noisy = 0.0;
  double dev_f1_global = 0.0;
  long best_step = 0;
};

struct GridResult {
  std::vector<GridRow> rows;
  double best_alpha = 0.0;
  std::filesystem::path table_path;
};

/// Default grid 0.0 .. 1.0 at 0.1 intervals.
std::vector<double> default_alpha_grid();

/// Trains one model per alpha with a shared seed and selects the alpha
/// maximizing global dev F1; ties go to the smaller alpha. Row 0 (alpha 0)
/// is the pure-generation ablation.
GridResult grid_search_alpha(const TrainConfig& base, const Corpora& corpora,
                             const std::filesystem::path& out_dir,
                             const std::vector<double>& values =
                                 default_alpha_grid(),
                             std::ostream* console = nullptr);

}  // namespace roslu
