// fcqed.hpp — convenience umbrella header

#pragma once

#include "fcqed/basis.hpp"
#include "fcqed/dynamics.hpp"
#include "fcqed/entanglement.hpp"
#include "fcqed/gates.hpp"
#include "fcqed/linalg.hpp"
#include "fcqed/model.hpp"
#include "fcqed/open_system.hpp"
#include "fcqed/operators.hpp"
#include "fcqed/scenario.hpp"
