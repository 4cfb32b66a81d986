#pragma once
// Umbrella header.

#include "rph/golden.hpp"
#include "rph/module.hpp"
#include "rph/tiling.hpp"
#include "rph/gpsp.hpp"
#include "rph/flips.hpp"
#include "rph/window.hpp"
#include "rph/symmetry.hpp"
#include "rph/stats.hpp"
#include "rph/io.hpp"
#include "rph/report.hpp"
