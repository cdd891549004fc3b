#pragma once

// umbrella header

#include "mvkit/cluster.hpp"
#include "mvkit/compose.hpp"
#include "mvkit/datasets.hpp"
#include "mvkit/decompose.hpp"
#include "mvkit/embed.hpp"
#include "mvkit/errors.hpp"
#include "mvkit/metrics.hpp"
#include "mvkit/plotting.hpp"
#include "mvkit/random.hpp"
#include "mvkit/semisup.hpp"
#include "mvkit/types.hpp"
#include "mvkit/validation.hpp"
#include "mvkit/version.hpp"
