#pragma once

// Umbrella header: synthetic self-similar traffic, Hurst estimation, and
// contention-element simulation.

#include "hurst.hpp"
#include "pareto.hpp"
#include "queue.hpp"
#include "rng.hpp"
#include "series.hpp"
#include "trace_io.hpp"
#include "traffic.hpp"
#include "version.hpp"
