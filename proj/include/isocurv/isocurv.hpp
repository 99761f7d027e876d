#pragma once

// Umbrella header.

#include "isocurv/report.hpp"
#include "isocurv/svg.hpp"
