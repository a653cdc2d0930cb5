// Copyright 2026 The AIFV Authors
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

#include "aifv/error.hpp"
#include "aifv/rational.hpp"
#include "aifv/distribution.hpp"
#include "aifv/dist_file.hpp"
#include "aifv/code_tree.hpp"
#include "aifv/validate.hpp"
#include "aifv/serialize.hpp"
#include "aifv/tree_builder.hpp"
#include "aifv/codec.hpp"
#include "aifv/analysis.hpp"
#include "aifv/huffman.hpp"
#include "aifv/ip_model.hpp"
#include "aifv/ip_solver.hpp"
#include "aifv/brute_force.hpp"
#include "aifv/optimizer.hpp"
#include "aifv/framing.hpp"
