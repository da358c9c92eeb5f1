#ifndef SMEIO_SMEIO_HPP
#define SMEIO_SMEIO_HPP

#include "smeio/adam.hpp"
#include "smeio/coordinate_search.hpp"
#include "smeio/cost_expr.hpp"
#include "smeio/dfo_tr.hpp"
#include "smeio/environment.hpp"
#include "smeio/fixtures.hpp"
#include "smeio/gradient.hpp"
#include "smeio/instance.hpp"
#include "smeio/mlp.hpp"
#include "smeio/network.hpp"
#include "smeio/newsvendor.hpp"
#include "smeio/optimizer_run.hpp"
#include "smeio/random_search.hpp"
#include "smeio/report.hpp"
#include "smeio/scalar.hpp"
#include "smeio/simulator.hpp"
#include "smeio/stochastics.hpp"

#endif  // SMEIO_SMEIO_HPP
