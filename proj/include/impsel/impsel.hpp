//
// Copyright 2026 The impsel Authors
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
//

// Convenience header pulling in the whole library.

#ifndef IMPSEL_IMPSEL_HPP_
#define IMPSEL_IMPSEL_HPP_

#include "impsel/audit.hpp"
#include "impsel/enumerate.hpp"
#include "impsel/exact.hpp"
#include "impsel/graph.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/outcome.hpp"
#include "impsel/partitions.hpp"
#include "impsel/twin_threshold.hpp"

#endif  // IMPSEL_IMPSEL_HPP_
