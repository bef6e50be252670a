#pragma once

#include "taut/chain_complex.hpp"
#include "taut/finite_model.hpp"
#include "taut/group_ops.hpp"
#include "taut/hom_ext.hpp"
#include "taut/kolmogoroff.hpp"
#include "taut/limit_checks.hpp"
#include "taut/tautness.hpp"
#include "taut/tower.hpp"
