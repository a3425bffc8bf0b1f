// Copyright 2026 The magic-sre Authors
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

#pragma once

#include "magic/amortization.hpp"
#include "magic/basis_pursuit.hpp"
#include "magic/circuit.hpp"
#include "magic/core.hpp"
#include "magic/decompositions.hpp"
#include "magic/hamiltonian.hpp"
#include "magic/io.hpp"
#include "magic/pauli.hpp"
#include "magic/psd_lemmas.hpp"
#include "magic/random.hpp"
#include "magic/simplex.hpp"
#include "magic/sre.hpp"
#include "magic/stabilizer.hpp"
#include "magic/state.hpp"
#include "magic/tcount.hpp"
