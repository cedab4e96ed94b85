#pragma once

#include "cydegen/config.hpp"
#include "cydegen/error.hpp"
#include "cydegen/gradedring.hpp"
#include "cydegen/invariants.hpp"
#include "cydegen/io.hpp"
#include "cydegen/localpoly.hpp"
#include "cydegen/milnor.hpp"
#include "cydegen/ncd.hpp"
#include "cydegen/periodfit.hpp"
#include "cydegen/rational.hpp"
