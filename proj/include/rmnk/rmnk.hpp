#pragma once

#include "rmnk/correlated_sampling.hpp"
#include "rmnk/dominance.hpp"
#include "rmnk/enumeration.hpp"
#include "rmnk/errors.hpp"
#include "rmnk/experiments.hpp"
#include "rmnk/instance_io.hpp"
#include "rmnk/landscape.hpp"
#include "rmnk/report.hpp"
#include "rmnk/rng.hpp"
#include "rmnk/stats.hpp"
#include "rmnk/walker.hpp"
