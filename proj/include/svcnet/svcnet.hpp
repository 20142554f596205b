#pragma once

// Umbrella header for the full toolkit.

#include "svcnet/bitset.hpp"      // IWYU pragma: export
#include "svcnet/community.hpp"   // IWYU pragma: export
#include "svcnet/compose.hpp"     // IWYU pragma: export
#include "svcnet/degree_fit.hpp"  // IWYU pragma: export
#include "svcnet/digraph.hpp"     // IWYU pragma: export
#include "svcnet/error.hpp"       // IWYU pragma: export
#include "svcnet/generate.hpp"    // IWYU pragma: export
#include "svcnet/metrics.hpp"     // IWYU pragma: export
#include "svcnet/network.hpp"     // IWYU pragma: export
#include "svcnet/ontology.hpp"    // IWYU pragma: export
#include "svcnet/report.hpp"      // IWYU pragma: export
#include "svcnet/rng.hpp"         // IWYU pragma: export
#include "svcnet/service_model.hpp"  // IWYU pragma: export
#include "svcnet/wsdl.hpp"        // IWYU pragma: export
