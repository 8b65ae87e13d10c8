// Copyright 2026 The branchcons Authors
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

#include "branchcons/conservation.hpp"
#include "branchcons/errors.hpp"
#include "branchcons/fuzz.hpp"
#include "branchcons/hilbert.hpp"
#include "branchcons/numeric.hpp"
#include "branchcons/scenarios/beamsplitter.hpp"
#include "branchcons/scenarios/box.hpp"
#include "branchcons/scenarios/equivalence.hpp"
#include "branchcons/scenarios/photon.hpp"
