#pragma once

#include "skewgreen/algebra.hpp"
#include "skewgreen/degree.hpp"
#include "skewgreen/error.hpp"
#include "skewgreen/escape.hpp"
#include "skewgreen/exact_complex.hpp"
#include "skewgreen/green.hpp"
#include "skewgreen/logspace.hpp"
#include "skewgreen/mapfile.hpp"
#include "skewgreen/oracle.hpp"
#include "skewgreen/raster.hpp"
#include "skewgreen/rational.hpp"
#include "skewgreen/stability.hpp"
#include "skewgreen/weights.hpp"
