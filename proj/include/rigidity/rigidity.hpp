#pragma once

#include "rigidity/analysis.hpp"
#include "rigidity/experiments.hpp"
#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/io.hpp"
#include "rigidity/linalg.hpp"
#include "rigidity/random.hpp"
#include "rigidity/thresholds.hpp"
