#pragma once

#include "conelab/rational.hpp"
#include "conelab/lp.hpp"
#include "conelab/lie_algebra.hpp"
#include "conelab/convex.hpp"
#include "conelab/spindler.hpp"
#include "conelab/roots.hpp"
#include "conelab/pointedness.hpp"
#include "conelab/affine_pairs.hpp"
#include "conelab/catalog.hpp"
#include "conelab/io.hpp"
