// Umbrella header.
#pragma once

#include "fullspec/common.hpp"
#include "fullspec/csv.hpp"
#include "fullspec/expressivity.hpp"
#include "fullspec/filters.hpp"
#include "fullspec/graph.hpp"
#include "fullspec/heterophily.hpp"
#include "fullspec/polynomial.hpp"
#include "fullspec/refinement.hpp"
#include "fullspec/spectral.hpp"
