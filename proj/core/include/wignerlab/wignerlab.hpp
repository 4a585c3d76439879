#pragma once

#include "wignerlab/ensemble.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/grid.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/modspace.hpp"
#include "wignerlab/moments.hpp"
#include "wignerlab/states.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"
