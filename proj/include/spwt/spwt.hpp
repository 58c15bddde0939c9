// SPDX-License-Identifier: Apache-2.0
//
// spwt: multi-IRS secure precise wireless transmission toolkit
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

#pragma once

#include "spwt/baseline.hpp"
#include "spwt/channel.hpp"
#include "spwt/convex_core.hpp"
#include "spwt/experiments.hpp"
#include "spwt/geometry.hpp"
#include "spwt/io.hpp"
#include "spwt/metrics.hpp"
#include "spwt/msinr.hpp"
#include "spwt/mslnr.hpp"
#include "spwt/msr.hpp"
#include "spwt/oracle.hpp"
#include "spwt/scenario.hpp"
#include "spwt/types.hpp"
#include "spwt/verify.hpp"
