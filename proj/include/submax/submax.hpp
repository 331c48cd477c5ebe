// Copyright 2026 The Authors.
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

#ifndef SUBMAX_SUBMAX_HPP_
#define SUBMAX_SUBMAX_HPP_

#include "submax/analysis.hpp"
#include "submax/constraints.hpp"
#include "submax/core.hpp"
#include "submax/experiment.hpp"
#include "submax/functions.hpp"
#include "submax/io.hpp"
#include "submax/optimize.hpp"
#include "submax/rng.hpp"
#include "submax/sampling.hpp"

#endif  // SUBMAX_SUBMAX_HPP_
