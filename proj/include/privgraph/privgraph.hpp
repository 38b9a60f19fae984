#pragma once

// Umbrella header: differentially private synthetic graph publication via
// community structure, a dense top-m baseline, evaluation metrics, and an
// influence-maximization case study.

#include "privgraph/benchmark_data.hpp"
#include "privgraph/community.hpp"
#include "privgraph/dp.hpp"
#include "privgraph/extraction.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/influence.hpp"
#include "privgraph/metrics.hpp"
#include "privgraph/random.hpp"
#include "privgraph/reconstruction.hpp"
#include "privgraph/serialize.hpp"
#include "privgraph/tmf.hpp"
