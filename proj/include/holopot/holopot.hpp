#pragma once

#include "holopot/domain.hpp"
#include "holopot/exact_complex.hpp"
#include "holopot/exact_core.hpp"
#include "holopot/expr_parser.hpp"
#include "holopot/json_io.hpp"
#include "holopot/multilinear.hpp"
#include "holopot/numeric_engine.hpp"
#include "holopot/poly.hpp"
#include "holopot/poly_field.hpp"
#include "holopot/quadrature.hpp"
#include "holopot/taylor_series.hpp"
