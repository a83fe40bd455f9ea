#pragma once

#include "nnhc/bench.hpp"
#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"
#include "nnhc/hierarchy.hpp"
#include "nnhc/io.hpp"
#include "nnhc/knn_index.hpp"
#include "nnhc/nn_graph.hpp"
#include "nnhc/oracle.hpp"
#include "nnhc/partition.hpp"
#include "nnhc/sampling.hpp"
