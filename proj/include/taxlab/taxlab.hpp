// Copyright 2026 The taxlab Authors.
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


// Umbrella header for the taxlab library.

#ifndef TAXLAB_TAXLAB_HPP_
#define TAXLAB_TAXLAB_HPP_

#include "taxlab/bundle.hpp"
#include "taxlab/comm_reconstruct.hpp"
#include "taxlab/complexity.hpp"
#include "taxlab/demand_menus.hpp"
#include "taxlab/disjointness.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/experiment.hpp"
#include "taxlab/json_io.hpp"
#include "taxlab/library.hpp"
#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/random.hpp"
#include "taxlab/rational.hpp"
#include "taxlab/report.hpp"
#include "taxlab/transforms.hpp"
#include "taxlab/valuation.hpp"
#include "taxlab/value_reconstruct.hpp"
#include "taxlab/verify.hpp"

#endif  // TAXLAB_TAXLAB_HPP_
