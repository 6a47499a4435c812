// Copyright 2026 The sparseres Authors.
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

#include "sparseres/am_bridge.hpp"
#include "sparseres/errors.hpp"
#include "sparseres/field.hpp"
#include "sparseres/lattice.hpp"
#include "sparseres/library.hpp"
#include "sparseres/linalg.hpp"
#include "sparseres/oracle.hpp"
#include "sparseres/plan_io.hpp"
#include "sparseres/poly.hpp"
#include "sparseres/resgen.hpp"
#include "sparseres/runtime.hpp"
#include "sparseres/system_io.hpp"
