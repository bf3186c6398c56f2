// Copyright 2026 the fdcr authors
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

// Umbrella header.

#ifndef FDCR_FDCR_HPP
#define FDCR_FDCR_HPP

#include "fdcr/io.hpp"
#include "fdcr/model.hpp"
#include "fdcr/montecarlo.hpp"
#include "fdcr/oracle.hpp"
#include "fdcr/rng.hpp"
#include "fdcr/solver.hpp"

#endif  // FDCR_FDCR_HPP
