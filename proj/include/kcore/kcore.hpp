#pragma once

// Convenience include for the whole library.

#include "kcore/achievable.hpp"
#include "kcore/constraints.hpp"
#include "kcore/corevert.hpp"
#include "kcore/errors.hpp"
#include "kcore/game.hpp"
#include "kcore/io.hpp"
#include "kcore/linalg.hpp"
#include "kcore/lp.hpp"
#include "kcore/oracle.hpp"
#include "kcore/order.hpp"
#include "kcore/rational.hpp"
#include "kcore/subset.hpp"
