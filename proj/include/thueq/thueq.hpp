#pragma once

// Umbrella header.

#include "thueq/errors.hpp"
#include "thueq/real.hpp"
#include "thueq/poly.hpp"
#include "thueq/form.hpp"
#include "thueq/roots.hpp"
#include "thueq/search.hpp"
#include "thueq/predicate.hpp"
#include "thueq/heights.hpp"
#include "thueq/logcurve.hpp"
#include "thueq/units.hpp"
#include "thueq/bounds.hpp"
#include "thueq/certify.hpp"
#include "thueq/scan.hpp"
