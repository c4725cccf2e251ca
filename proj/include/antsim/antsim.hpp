#pragma once

#include "antsim/agents.hpp"
#include "antsim/config_io.hpp"
#include "antsim/core.hpp"
#include "antsim/engine.hpp"
#include "antsim/experiments.hpp"
#include "antsim/metrics.hpp"
#include "antsim/noise.hpp"
#include "antsim/oracle.hpp"
#include "antsim/rng.hpp"
#include "antsim/types.hpp"
