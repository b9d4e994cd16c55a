#pragma once

#include "volrat/applications.hpp"
#include "volrat/bounds.hpp"
#include "volrat/error.hpp"
#include "volrat/exact.hpp"
#include "volrat/log_value.hpp"
#include "volrat/monte_carlo.hpp"
#include "volrat/quadrature.hpp"
#include "volrat/special.hpp"
#include "volrat/spectrum.hpp"
#include "volrat/spectrum_io.hpp"
#include "volrat/sweep.hpp"
