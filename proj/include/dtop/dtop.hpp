#pragma once

#include "dtop/analysis.hpp"
#include "dtop/analytic_vector.hpp"
#include "dtop/io.hpp"
#include "dtop/kernels.hpp"
#include "dtop/point.hpp"
#include "dtop/symbols.hpp"
#include "dtop/toeplitz.hpp"
