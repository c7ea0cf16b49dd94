// Copyright 2026 The sv Authors
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


/// @file
/// Single-copy entanglement detection: simulators, schemes, bounds and campaigns.

#pragma once

#include "sv/bounds.hpp"
#include "sv/common.hpp"
#include "sv/dense.hpp"
#include "sv/hamiltonian.hpp"
#include "sv/local_hamiltonian.hpp"
#include "sv/noise.hpp"
#include "sv/partitions.hpp"
#include "sv/pauli.hpp"
#include "sv/protocols.hpp"
#include "sv/rng.hpp"
#include "sv/runner.hpp"
#include "sv/sep_oracle.hpp"
#include "sv/source.hpp"
#include "sv/stabilizer.hpp"
#include "sv/success_operator.hpp"
