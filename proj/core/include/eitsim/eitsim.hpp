#pragma once

#include "eitsim/adiabaton.hpp"
#include "eitsim/analysis.hpp"
#include "eitsim/bloch.hpp"
#include "eitsim/core.hpp"
#include "eitsim/errors.hpp"
#include "eitsim/propagation.hpp"
#include "eitsim/pulses.hpp"
#include "eitsim/spectroscopy.hpp"
#include "eitsim/storage.hpp"
