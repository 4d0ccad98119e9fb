#pragma once

#include "omegafract/automaton.hpp"
#include "omegafract/dimension.hpp"
#include "omegafract/enumerate.hpp"
#include "omegafract/error.hpp"
#include "omegafract/geometry.hpp"
#include "omegafract/graph.hpp"
#include "omegafract/json_io.hpp"
#include "omegafract/matrix.hpp"
#include "omegafract/measure.hpp"
#include "omegafract/spectral.hpp"
#include "omegafract/structure.hpp"
