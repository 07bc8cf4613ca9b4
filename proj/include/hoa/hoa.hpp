// Copyright 2026 The hoa-lab Authors
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

#include "hoa/approximation.hpp"
#include "hoa/circuit.hpp"
#include "hoa/error.hpp"
#include "hoa/ground.hpp"
#include "hoa/measurement.hpp"
#include "hoa/models.hpp"
#include "hoa/noise.hpp"
#include "hoa/pauli.hpp"
#include "hoa/propagator.hpp"
#include "hoa/spectral.hpp"
#include "hoa/statevector.hpp"
#include "hoa/stencil.hpp"
#include "hoa/trotter.hpp"
#include "hoa/version.hpp"
#include "hoa/vqe.hpp"
