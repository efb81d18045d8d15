#pragma once

#include "glab/errors.hpp"
#include "glab/version.hpp"
#include "glab/specfun.hpp"
#include "glab/roots.hpp"
#include "glab/quadrature.hpp"
#include "glab/parallel.hpp"
#include "glab/constants.hpp"
#include "glab/critdim.hpp"
#include "glab/exponents.hpp"
#include "glab/radial_function.hpp"
#include "glab/fraclap.hpp"
#include "glab/stability.hpp"
#include "glab/profile.hpp"
#include "glab/biharmonic.hpp"
#include "glab/halfspace.hpp"
#include "glab/extension.hpp"
#include "glab/acceptance.hpp"
