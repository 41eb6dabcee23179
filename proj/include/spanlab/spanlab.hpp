// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Everything except the JSON layer (spanlab/json_io.hpp), which pulls in
// nlohmann/json.

#include "spanlab/audit.hpp"
#include "spanlab/clustering.hpp"
#include "spanlab/convex_sets.hpp"
#include "spanlab/distortion.hpp"
#include "spanlab/edge_list.hpp"
#include "spanlab/emulator.hpp"
#include "spanlab/error.hpp"
#include "spanlab/generators.hpp"
#include "spanlab/geometry.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/lower_bound.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/path_buying.hpp"
#include "spanlab/preserver.hpp"
#include "spanlab/random.hpp"
#include "spanlab/recursion.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/shortest_paths.hpp"
#include "spanlab/spanner.hpp"
#include "spanlab/subgraph.hpp"
