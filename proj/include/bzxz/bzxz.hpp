// Copyright 2026 The bzxz Authors
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

#include "bzxz/block_zxz.hpp"
#include "bzxz/circuit.hpp"
#include "bzxz/classical.hpp"
#include "bzxz/error.hpp"
#include "bzxz/io.hpp"
#include "bzxz/linalg.hpp"
#include "bzxz/polar.hpp"
#include "bzxz/random.hpp"
#include "bzxz/synthesis.hpp"
#include "bzxz/verify.hpp"
