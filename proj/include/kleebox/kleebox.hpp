#pragma once

#include "kleebox/core.hpp"
#include "kleebox/error.hpp"
#include "kleebox/harness.hpp"
#include "kleebox/io.hpp"
#include "kleebox/plan.hpp"
#include "kleebox/reductions.hpp"
#include "kleebox/shrink.hpp"
#include "kleebox/solvers.hpp"
#include "kleebox/staircase.hpp"
