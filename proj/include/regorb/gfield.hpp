#pragma once

// Finite fields, polynomials over them, and the integer helpers they rely on.
#include "regorb/bigint.hpp"
#include "regorb/field.hpp"
#include "regorb/integers.hpp"
#include "regorb/poly.hpp"
