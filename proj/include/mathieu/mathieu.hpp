#pragma once

#include "mathieu/exact_scalar.hpp"
#include "mathieu/haar.hpp"
#include "mathieu/hull.hpp"
#include "mathieu/io.hpp"
#include "mathieu/lab.hpp"
#include "mathieu/numeric.hpp"
#include "mathieu/power.hpp"
#include "mathieu/wigner.hpp"
