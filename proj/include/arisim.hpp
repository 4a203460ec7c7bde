// SPDX-License-Identifier: Apache-2.0
//
// arisim: link-level simulator for aerial-RIS assisted CoMP-NOMA downlinks
// Copyright (C) 2026 The arisim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ARISIM_HPP
#define ARISIM_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"
#include "arisim/feedback.hpp"
#include "arisim/metrics.hpp"
#include "arisim/montecarlo.hpp"
#include "arisim/noma_comp.hpp"
#include "arisim/optimizer.hpp"
#include "arisim/random.hpp"
#include "arisim/ris.hpp"

#endif
