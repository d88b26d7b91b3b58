#pragma once

#include "maxcov/csv.hpp"
#include "maxcov/form.hpp"
#include "maxcov/frame.hpp"
#include "maxcov/hodge.hpp"
#include "maxcov/jet.hpp"
#include "maxcov/linalg.hpp"
#include "maxcov/maxwell.hpp"
#include "maxcov/point.hpp"
#include "maxcov/pullback.hpp"
#include "maxcov/quadrature.hpp"
#include "maxcov/rational.hpp"
#include "maxcov/reconstruction.hpp"
#include "maxcov/rng.hpp"
#include "maxcov/runner.hpp"
#include "maxcov/scalar_jet.hpp"
#include "maxcov/scalar_poly.hpp"
#include "maxcov/scenario.hpp"
