// cascade.hpp — umbrella include for the whole library.

#pragma once

#include "cascade/atom.hpp"
#include "cascade/errors.hpp"
#include "cascade/io.hpp"
#include "cascade/run_config.hpp"
#include "cascade/scattering_bare.hpp"
#include "cascade/scattering_dressed.hpp"
#include "cascade/spectral_analysis.hpp"
#include "cascade/steady_state.hpp"
#include "cascade/verify.hpp"
