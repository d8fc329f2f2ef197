#pragma once

#include "o1p/errors.hpp"
#include "o1p/graph.hpp"
#include "o1p/families.hpp"
#include "o1p/embedding.hpp"
#include "o1p/candidates.hpp"
#include "o1p/reduce.hpp"
#include "o1p/recognize.hpp"
#include "o1p/strategies.hpp"
#include "o1p/generate.hpp"
#include "o1p/io.hpp"
#include "o1p/oracle.hpp"
#include "o1p/bench.hpp"
