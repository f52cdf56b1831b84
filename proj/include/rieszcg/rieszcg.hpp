#pragma once

#include "rieszcg/errors.hpp"
#include "rieszcg/riesz_algebra.hpp"
#include "rieszcg/polynomial.hpp"
#include "rieszcg/chebyshev.hpp"
#include "rieszcg/jacobi.hpp"
#include "rieszcg/function_linalg.hpp"
#include "rieszcg/cg_solver.hpp"
#include "rieszcg/rate_bounds.hpp"
#include "rieszcg/harness/problem.hpp"
#include "rieszcg/harness/oracle.hpp"
#include "rieszcg/harness/compare.hpp"
#include "rieszcg/harness/io.hpp"
