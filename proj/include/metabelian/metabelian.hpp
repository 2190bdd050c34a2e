#pragma once

// Umbrella header for the whole library.

#include "metabelian/arith.hpp"
#include "metabelian/commod.hpp"
#include "metabelian/errors.hpp"
#include "metabelian/evalhom.hpp"
#include "metabelian/fox.hpp"
#include "metabelian/foxword.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/numeric.hpp"
#include "metabelian/sampling.hpp"
#include "metabelian/word.hpp"
#include "metabelian/words.hpp"
