#pragma once

// Umbrella header.

#include "ww/arith.hpp"
#include "ww/bases.hpp"
#include "ww/evaluate.hpp"
#include "ww/fixtures.hpp"
#include "ww/floor_diagram.hpp"
#include "ww/invariant.hpp"
#include "ww/json_io.hpp"
#include "ww/marking.hpp"
#include "ww/multireal.hpp"
#include "ww/quad.hpp"
#include "ww/tpoly.hpp"
#include "ww/verify.hpp"
#include "ww/welschinger.hpp"
#include "ww/witt.hpp"
