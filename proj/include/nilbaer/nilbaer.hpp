#pragma once

#include "nilbaer/commutator.hpp"
#include "nilbaer/errors.hpp"
#include "nilbaer/hall_basis.hpp"
#include "nilbaer/lie.hpp"
#include "nilbaer/multiplier.hpp"
#include "nilbaer/verify.hpp"
#include "nilbaer/version.hpp"
