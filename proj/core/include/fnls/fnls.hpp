#pragma once

// Umbrella header for the fnls core library.

#include "fnls/dispersion.hpp"
#include "fnls/errors.hpp"
#include "fnls/experiments.hpp"
#include "fnls/field.hpp"
#include "fnls/format.hpp"
#include "fnls/grid.hpp"
#include "fnls/integrator.hpp"
#include "fnls/model.hpp"
#include "fnls/observables.hpp"
#include "fnls/operators.hpp"
#include "fnls/transforms.hpp"
#include "fnls/waves.hpp"
