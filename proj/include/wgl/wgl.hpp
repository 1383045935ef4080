#pragma once

#include "wgl/digest.hpp"
#include "wgl/errors.hpp"
#include "wgl/exp_sums.hpp"
#include "wgl/explicit_formula.hpp"
#include "wgl/gamma.hpp"
#include "wgl/grid.hpp"
#include "wgl/io.hpp"
#include "wgl/pipeline.hpp"
#include "wgl/quadrature.hpp"
#include "wgl/representations.hpp"
#include "wgl/sieve.hpp"
#include "wgl/summation.hpp"
#include "wgl/zeros.hpp"
