// qswap.hpp — umbrella header

#pragma once

#include "qswap/channels.hpp"
#include "qswap/interferometer.hpp"
#include "qswap/io.hpp"
#include "qswap/linalg.hpp"
#include "qswap/matrix.hpp"
#include "qswap/observables.hpp"
#include "qswap/random.hpp"
#include "qswap/rng.hpp"
#include "qswap/spectral.hpp"
#include "qswap/states.hpp"
#include "qswap/tomography.hpp"
#include "qswap/version.hpp"
