// Copyright 2026 The SEQPT Authors
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

#pragma once

#define SEQPT_VERSION "0.1.0"

#include "seqpt/channel.hpp"
#include "seqpt/circuit.hpp"
#include "seqpt/dense.hpp"
#include "seqpt/estimator.hpp"
#include "seqpt/gf2.hpp"
#include "seqpt/mub.hpp"
#include "seqpt/pauli.hpp"
#include "seqpt/rng.hpp"
#include "seqpt/simulator.hpp"
#include "seqpt/stabilizer_basis.hpp"
