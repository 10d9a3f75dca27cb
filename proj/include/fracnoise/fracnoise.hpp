// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header.
#include "fracnoise/version.hpp"
#include "fracnoise/frac_calc.hpp"
#include "fracnoise/fbm.hpp"
#include "fracnoise/kernels.hpp"
#include "fracnoise/mittag_leffler.hpp"
#include "fracnoise/volterra.hpp"
#include "fracnoise/resolvent.hpp"
#include "fracnoise/spectral_model.hpp"
#include "fracnoise/spectral_sim.hpp"
#include "fracnoise/io.hpp"
