#pragma once

#include "canonical.hpp"
#include "consistency.hpp"
#include "curve_class.hpp"
#include "io.hpp"
#include "minimal.hpp"
#include "scatter.hpp"
#include "widgets.hpp"
