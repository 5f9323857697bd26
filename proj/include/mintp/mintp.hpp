#pragma once

#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/matcher.hpp"
#include "mintp/requirements.hpp"
#include "mintp/transform.hpp"
#include "mintp/condense.hpp"
#include "mintp/minflow.hpp"
#include "mintp/reconstruct.hpp"
#include "mintp/pipeline.hpp"
#include "mintp/baseline.hpp"
#include "mintp/bench.hpp"
