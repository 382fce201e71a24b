#pragma once

#include "kplot/analytic.hpp"
#include "kplot/dilog.hpp"
#include "kplot/error.hpp"
#include "kplot/estimators.hpp"
#include "kplot/quadrant.hpp"
#include "kplot/quadrature.hpp"
#include "kplot/random.hpp"
#include "kplot/reporting.hpp"
#include "kplot/resampling.hpp"
#include "kplot/sample.hpp"
#include "kplot/samplers.hpp"
#include "kplot/simulation.hpp"
#include "kplot/stats.hpp"
#include "kplot/version.hpp"
