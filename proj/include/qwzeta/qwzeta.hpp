#pragma once

#include "qwzeta/corpus.hpp"
#include "qwzeta/cross_check.hpp"
#include "qwzeta/det_gamma.hpp"
#include "qwzeta/errors.hpp"
#include "qwzeta/graph.hpp"
#include "qwzeta/numeric.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/polynomial.hpp"
#include "qwzeta/voltage_graph.hpp"
#include "qwzeta/zeta_finite.hpp"
