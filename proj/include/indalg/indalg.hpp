#pragma once

#include "indalg/act_orders.hpp"
#include "indalg/catalog.hpp"
#include "indalg/counterexample.hpp"
#include "indalg/error.hpp"
#include "indalg/freegroup.hpp"
#include "indalg/hmap.hpp"
#include "indalg/linalg.hpp"
#include "indalg/matrix_orders.hpp"
#include "indalg/ore.hpp"
#include "indalg/random.hpp"
#include "indalg/stratification.hpp"
#include "indalg/terms.hpp"
