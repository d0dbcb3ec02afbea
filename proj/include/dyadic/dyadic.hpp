#pragma once

// Umbrella header: universality of integral quadratic lattices over dyadic
// local fields, decided three ways (closed form, target sweep, enumeration
// oracle) from good-BONG presentations.

#include "dyadic/bong.hpp"
#include "dyadic/enumeration.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/field.hpp"
#include "dyadic/gram.hpp"
#include "dyadic/half_integer.hpp"
#include "dyadic/io.hpp"
#include "dyadic/oracle.hpp"
#include "dyadic/sweep.hpp"
#include "dyadic/symbols.hpp"
#include "dyadic/universality.hpp"
