#pragma once

#include "threadlab/assembly.hpp"
#include "threadlab/core.hpp"
#include "threadlab/export.hpp"
#include "threadlab/generators.hpp"
#include "threadlab/io.hpp"
#include "threadlab/matching.hpp"
#include "threadlab/oracle.hpp"
#include "threadlab/reductions.hpp"
#include "threadlab/solvers.hpp"
#include "threadlab/tsp.hpp"
