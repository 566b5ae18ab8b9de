#pragma once

// Umbrella header.

#include "surflab/classify.hpp"
#include "surflab/cmc.hpp"
#include "surflab/config.hpp"
#include "surflab/domain.hpp"
#include "surflab/errors.hpp"
#include "surflab/expr.hpp"
#include "surflab/format.hpp"
#include "surflab/invariants.hpp"
#include "surflab/maxface.hpp"
#include "surflab/mesh.hpp"
#include "surflab/quadrature.hpp"
#include "surflab/surface.hpp"
#include "surflab/tolerances.hpp"
#include "surflab/vec3.hpp"
#include "surflab/verify.hpp"
#include "surflab/wirtinger.hpp"
