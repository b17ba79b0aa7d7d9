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

#include "roslu/tensor/graph.hpp"
#include "roslu/tensor/tensor.hpp"

namespace roslu {

// Training scalar type. 64-bit is the default so gradient checks and
// bit-level reproducibility tests are meaningful; configure with
// -DROSLU_REAL_FLOAT=ON for 32-bit arithmetic.
#ifdef ROSLU_REAL_FLOAT
using real_t = float;
#else
using real_t = double;
#endif

using RMat = Mat<real_t>;
using Var = Variable<real_t>;

}  // namespace roslu
