// Copyright 2026 The trajldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAJLDP_TRAJLDP_H_
#define TRAJLDP_TRAJLDP_H_

// Umbrella header pulling in the whole toolkit.

#include "trajldp/anchor.h"
#include "trajldp/budget.h"
#include "trajldp/dataset.h"
#include "trajldp/direction.h"
#include "trajldp/geo.h"
#include "trajldp/mechanisms.h"
#include "trajldp/metrics.h"
#include "trajldp/pivot.h"
#include "trajldp/random.h"

#endif  // TRAJLDP_TRAJLDP_H_
