// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "rissnr/analytic.hpp"
#include "rissnr/channel.hpp"
#include "rissnr/common.hpp"
#include "rissnr/distfit.hpp"
#include "rissnr/linalg.hpp"
#include "rissnr/monte_carlo.hpp"
#include "rissnr/rng.hpp"
#include "rissnr/scenario.hpp"
#include "rissnr/snr.hpp"
#include "rissnr/special_functions.hpp"
#include "rissnr/workbench.hpp"
