#ifndef BIPPR_HPP
#define BIPPR_HPP

#include "bippr/alias_table.hpp"
#include "bippr/bench.hpp"
#include "bippr/estimator.hpp"
#include "bippr/exact_sum.hpp"
#include "bippr/graph.hpp"
#include "bippr/mstp.hpp"
#include "bippr/oracle.hpp"
#include "bippr/path_sampler.hpp"
#include "bippr/push.hpp"
#include "bippr/random.hpp"
#include "bippr/record.hpp"
#include "bippr/search.hpp"
#include "bippr/shard.hpp"
#include "bippr/sparse_vec.hpp"
#include "bippr/synthetic.hpp"
#include "bippr/undirected.hpp"

#endif
