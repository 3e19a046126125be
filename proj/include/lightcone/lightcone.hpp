#pragma once

#include "lightcone/amplitudes.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/oracle.hpp"
#include "lightcone/parallel.hpp"
#include "lightcone/quadrature.hpp"
#include "lightcone/specfun.hpp"
#include "lightcone/state.hpp"
#include "lightcone/sweep.hpp"
