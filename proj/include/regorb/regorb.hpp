#pragma once

#include "regorb/bounds.hpp"
#include "regorb/certify.hpp"
#include "regorb/charcalc.hpp"
#include "regorb/gfield.hpp"
#include "regorb/io.hpp"
#include "regorb/mat.hpp"
#include "regorb/matgroup.hpp"
#include "regorb/orbits.hpp"
#include "regorb/pipeline.hpp"
#include "regorb/spectral.hpp"
