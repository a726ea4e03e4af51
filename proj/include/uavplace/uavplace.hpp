#pragma once

#include "uavplace/baselines.hpp"
#include "uavplace/channel.hpp"
#include "uavplace/config.hpp"
#include "uavplace/experiments.hpp"
#include "uavplace/geometry.hpp"
#include "uavplace/problem.hpp"
#include "uavplace/solver.hpp"
