#pragma once

#include "wkm/analysis.hpp"
#include "wkm/cluster.hpp"
#include "wkm/error.hpp"
#include "wkm/geo.hpp"
#include "wkm/ingest.hpp"
#include "wkm/metrics.hpp"
#include "wkm/rng.hpp"
#include "wkm/search.hpp"
