#pragma once

#include "orbitsum/analysis.hpp"
#include "orbitsum/arith.hpp"
#include "orbitsum/dynamics.hpp"
#include "orbitsum/error.hpp"
#include "orbitsum/series.hpp"
#include "orbitsum/store.hpp"
#include "orbitsum/survey.hpp"
