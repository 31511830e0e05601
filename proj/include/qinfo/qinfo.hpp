// Copyright 2026 The qinfo Authors
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

// Umbrella header. json_io.hpp is separate because it needs nlohmann/json.

#pragma once

#include "qinfo/coding.hpp"
#include "qinfo/core.hpp"
#include "qinfo/distinguishability.hpp"
#include "qinfo/dynamics.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/protocols.hpp"
#include "qinfo/random.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"
