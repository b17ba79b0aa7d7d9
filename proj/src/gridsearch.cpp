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

#include "roslu/train/gridsearch.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "roslu/error.hpp"

namespace roslu {

std::vector<double> default_alpha_grid() {
  std::vector<double> v;
  for (int i = 0; i <= 10; ++i) v.push_back(i / 10.0);
  return v;
}

namespace {

std::string alpha_tag(double a) {
  std::ostringstream os;
  os << "alpha_" << a;
  return os.str();
}

}  // namespace

GridResult grid_search_alpha(const TrainConfig& base, const Corpora& corpora,
                             const std::filesystem::path& out_dir,
                             const std::vector<double>& values,
                             std::ostream* console) {
  if (values.empty()) throw ConfigError("grid search needs at least one alpha");
  if (corpora.dev_clean.empty() && corpora.dev_noisy.empty())
    throw DataError("grid search needs a dev split");

  GridResult res;
  std::filesystem::create_directories(out_dir);
  for (double a : values) {
    TrainConfig cfg = base;
    cfg.alpha = a;
    if (console) *console << "[grid] training alpha=" << a << "\n";
    auto r = train(cfg, corpora, out_dir / alpha_tag(a), nullptr);
    res.rows.push_back(
        {a, r.best_dev_f1_clean, r.best_dev_f1_noisy, r.best_dev_f1,
         r.best_step});
    if (console)
      *console << "[grid] alpha=" << a << " dev_f1_global=" << r.best_dev_f1
               << "\n";
  }

  // strict > keeps ties at the smaller alpha (rows come in ascending order)
  size_t best = 0;
  for (size_t i = 1; i < res.rows.size(); ++i)
    if (res.rows[i].dev_f1_global > res.rows[best].dev_f1_global) best = i;
  res.best_alpha = res.rows[best].alpha;

  res.table_path = out_dir / "grid.json";
  nlohmann::ordered_json table;
  table["best_alpha"] = res.best_alpha;
  table["selection_metric"] = "dev_f1_global";
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : res.rows)
    rows.push_back({{"alpha", row.alpha},
                    {"dev_f1_clean", row.dev_f1_clean},
                    {"dev_f1_noisy", row.dev_f1_noisy},
                    {"dev_f1_global", row.dev_f1_global},
                    {"best_step", row.best_step}});
  table["rows"] = rows;
  std::ofstream out(res.table_path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + res.table_path.string());
  out << table.dump(2) << "\n";
  return res;
}

}  // namespace roslu
