#pragma once

#include "augment.hpp"
#include "binmatrix.hpp"
#include "graph_tree.hpp"
#include "oracle.hpp"
#include "reduce.hpp"
#include "skeleton.hpp"
#include "splittable.hpp"
#include "spqr.hpp"
#include "union_find.hpp"
