#pragma once

#include "halfline/errors.hpp"
#include "halfline/factorization.hpp"
#include "halfline/fluctuation.hpp"
#include "halfline/generate.hpp"
#include "halfline/measure.hpp"
#include "halfline/polyroots.hpp"
#include "halfline/quadrature.hpp"
#include "halfline/rational.hpp"
#include "halfline/reconstruct.hpp"
#include "halfline/serialize.hpp"
#include "halfline/trace.hpp"
