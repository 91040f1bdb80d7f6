// Copyright 2026 The convexfam Authors
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

// Umbrella header.

#include "convexfam/bits.hpp"
#include "convexfam/cycles.hpp"
#include "convexfam/dgraph.hpp"
#include "convexfam/families.hpp"
#include "convexfam/game_form.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/grid.hpp"
#include "convexfam/io.hpp"
#include "convexfam/kernel.hpp"
#include "convexfam/matrix_game.hpp"
#include "convexfam/perfect.hpp"
#include "convexfam/poset.hpp"
#include "convexfam/registry.hpp"
#include "convexfam/universe.hpp"
