// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#define FRACNOISE_VERSION_MAJOR 0
#define FRACNOISE_VERSION_MINOR 1
#define FRACNOISE_VERSION_PATCH 0
#define FRACNOISE_VERSION "0.1.0"
