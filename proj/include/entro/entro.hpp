#pragma once

// Umbrella header: algebraic entropy of group endomorphisms on concretely
// represented groups, with permutability testing and Addition Theorem
// experiments on exactly solvable instances.

#include "entro/at.hpp"
#include "entro/catalog.hpp"
#include "entro/core.hpp"
#include "entro/dynamics.hpp"
#include "entro/entropy.hpp"
#include "entro/finite_set.hpp"
#include "entro/group.hpp"
#include "entro/group_spec.hpp"
#include "entro/permutability.hpp"
#include "entro/serialize.hpp"
