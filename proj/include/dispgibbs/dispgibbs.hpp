#pragma once

#include "dispgibbs/contour.hpp"
#include "dispgibbs/dispersion.hpp"
#include "dispgibbs/error.hpp"
#include "dispgibbs/gibbs.hpp"
#include "dispgibbs/ivp.hpp"
#include "dispgibbs/parallel.hpp"
#include "dispgibbs/quadrature.hpp"
#include "dispgibbs/special_fn.hpp"
