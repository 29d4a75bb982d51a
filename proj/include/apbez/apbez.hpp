#pragma once

#include "apbez/area.hpp"
#include "apbez/bezier.hpp"
#include "apbez/error.hpp"
#include "apbez/experiments.hpp"
#include "apbez/interpolator.hpp"
#include "apbez/metrics.hpp"
#include "apbez/parallel.hpp"
#include "apbez/quadrature.hpp"
#include "apbez/svg.hpp"
#include "apbez/targets.hpp"
#include "apbez/vec2.hpp"
