#pragma once

#include "mlines/errors.hpp"
#include "mlines/metric_core.hpp"
#include "mlines/matrix_io.hpp"
#include "mlines/line_enumeration.hpp"
#include "mlines/pair_structure.hpp"
#include "mlines/collinear_ordering.hpp"
#include "mlines/witness_extraction.hpp"
#include "mlines/instances.hpp"
#include "mlines/json_export.hpp"
#include "mlines/sweep.hpp"
