#pragma once

#include "weibull_bd/bench.hpp"
#include "weibull_bd/envelope.hpp"
#include "weibull_bd/error.hpp"
#include "weibull_bd/io.hpp"
#include "weibull_bd/model.hpp"
#include "weibull_bd/solvers.hpp"
