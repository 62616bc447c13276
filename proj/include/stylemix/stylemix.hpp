#ifndef STYLEMIX_STYLEMIX_HPP
#define STYLEMIX_STYLEMIX_HPP

#include "stylemix/catalog.hpp"
#include "stylemix/distance_matrix.hpp"
#include "stylemix/error.hpp"
#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/rng.hpp"
#include "stylemix/variety.hpp"

#include "stylemix/solver/baseline.hpp"
#include "stylemix/solver/evaluate.hpp"
#include "stylemix/solver/exact.hpp"
#include "stylemix/solver/heuristic.hpp"
#include "stylemix/solver/lp_export.hpp"
#include "stylemix/solver/max_flow.hpp"
#include "stylemix/solver/quantity.hpp"
#include "stylemix/solver/report.hpp"

#include "stylemix/experiments/comparison.hpp"
#include "stylemix/experiments/counterexamples.hpp"
#include "stylemix/experiments/linearity.hpp"
#include "stylemix/experiments/stats.hpp"
#include "stylemix/experiments/synthetic.hpp"

#endif // STYLEMIX_STYLEMIX_HPP
