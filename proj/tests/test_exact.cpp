#include <gtest/gtest.h>

#include <functional>

#include "stylemix/stylemix.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stylemix;
using namespace stylemix::testing;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::MalformedInput;
}

} // namespace

TEST(Exact, LineOfFour) {
  const auto inst = line_of_four();
  const auto report = solve_exact(inst);
  EXPECT_EQ(report.status, SolveStatus::Optimal);
  EXPECT_DOUBLE_EQ(report.objective(), 5.0);
  // the outer pair {1,4} in one store, {2,3} in the other; lexicographic
  // tie-break puts {2,3} in the first store
  EXPECT_EQ(report.plan.y.members(0), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(report.plan.y.members(1), (std::vector<std::size_t>{0, 3}));
  EXPECT_TRUE(plan_violations(inst, report.plan).empty());
}

TEST(Exact, LineOfFourMatchesExhaustiveOracle) {
  const auto inst = line_of_four();
  const auto best = enumerate_optimum(
      inst, [&](const AssignmentPattern &y) { return brute_quantity_feasible(inst, y); });
  ASSERT_TRUE(best);
  EXPECT_DOUBLE_EQ(best->objective, 5.0);
  EXPECT_EQ(solve_exact(inst).plan.y, best->pattern);
}

TEST(Exact, TwoArticlesOneStore) {
  const auto inst = make_instance({3, 3}, {1, 1}, {4}, 0.0, DistanceMatrix(2, {0, 7, 7, 0}));
  const auto r = solve_exact(inst);
  EXPECT_DOUBLE_EQ(r.objective(), 3.5);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(Exact, MinimumAboveEveryCapIsInfeasible) {
  const auto inst = make_instance({20, 20, 20}, {9, 9, 9}, {5, 6}, 0.2,
                                  DistanceMatrix(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(code_of([&] { solve_exact(inst); }), ErrorCode::Infeasible);
  EXPECT_TRUE(diagnose_infeasibility(inst).has_value());
}

TEST(Exact, DiagnoseGlobalSupply) {
  const auto inst = make_instance({4, 4}, {1, 1}, {5, 5}, 0.0, DistanceMatrix(2, {0, 1, 1, 0}));
  const auto why = diagnose_infeasibility(inst);
  ASSERT_TRUE(why);
  EXPECT_NE(why->find("global_supply"), std::string::npos);
  EXPECT_FALSE(diagnose_infeasibility(line_of_four()).has_value());
}

TEST(Exact, InvalidInstanceAndSizeLimit) {
  auto bad = line_of_four();
  bad.alpha = 2.0;
  EXPECT_EQ(code_of([&] { solve_exact(bad); }), ErrorCode::InvalidInstance);
  DistributionInstance big;
  for (std::size_t i = 0; i < kMaxExactArticles + 1; ++i)
    big.articles.push_back({"a" + std::to_string(i), 2, 1});
  big.stores.push_back({"s", 3});
  big.distances = DistanceMatrix(big.num_articles(),
                                 std::vector<double>(big.num_articles() * big.num_articles(), 0.0));
  EXPECT_EQ(code_of([&] { solve_exact(big); }), ErrorCode::InvalidConfig);
}

TEST(Exact, MatchesPatternEnumeration) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = random_instance(seed, 4, 3);
    const auto best = enumerate_optimum(
        inst, [&](const AssignmentPattern &y) { return quantity_feasible(inst, y).feasible; });
    if (!best) {
      EXPECT_EQ(code_of([&] { solve_exact(inst); }), ErrorCode::Infeasible) << "seed " << seed;
      continue;
    }
    ExactLimits cold;
    cold.warm_start = false;
    for (const auto &limits : {ExactLimits{}, cold}) {
      const auto r = solve_exact(inst, limits);
      EXPECT_NEAR(r.objective(), best->objective, 1e-9) << "seed " << seed;
      EXPECT_EQ(r.plan.y, best->pattern) << "seed " << seed;
    }
  }
}

TEST(Exact, MicroInstancesMatchFullyExhaustiveOracle) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = micro_instance(seed);
    const auto best = enumerate_optimum(
        inst, [&](const AssignmentPattern &y) { return brute_quantity_feasible(inst, y); });
    if (!best) {
      EXPECT_EQ(code_of([&] { solve_exact(inst); }), ErrorCode::Infeasible) << "seed " << seed;
      continue;
    }
    EXPECT_NEAR(solve_exact(inst).objective(), best->objective, 1e-9) << "seed " << seed;
  }
}

TEST(Exact, TolerantBigMIsNonBinding) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = micro_instance(seed);
    inst.big_m_policy = BigMPolicy::TolerantQs;
    const auto relaxed = enumerate_optimum(inst, [&](const AssignmentPattern &y) {
      return brute_quantity_feasible(inst, y, Quantity{1000});
    });
    if (!relaxed) {
      EXPECT_EQ(code_of([&] { solve_exact(inst); }), ErrorCode::Infeasible);
      continue;
    }
    EXPECT_NEAR(solve_exact(inst).objective(), relaxed->objective, 1e-9) << "seed " << seed;
  }
}

TEST(Exact, StoreQuantityBigMCanBind) {
  // q = 5, alpha = 0.4: the band allows 7 units but M = 5 caps any one cell,
  // and article b is tiny
  const auto inst = make_instance({7, 1}, {6, 1}, {5}, 0.4, DistanceMatrix(2, {0, 1, 1, 0}));
  EXPECT_EQ(code_of([&] { solve_exact(inst); }), ErrorCode::Infeasible);
  auto tolerant = inst;
  tolerant.big_m_policy = BigMPolicy::TolerantQs;
  EXPECT_DOUBLE_EQ(solve_exact(tolerant).objective(), 0.5);
}

TEST(Exact, BudgetLimits) {
  const auto inst = paired_instance(5);
  ExactLimits cold;
  cold.warm_start = false;
  const auto full = solve_exact(inst, cold);
  EXPECT_EQ(full.status, SolveStatus::Optimal);
  EXPECT_FALSE(full.budget_exceeded);
  bool stopped_with_incumbent = false;
  for (std::size_t limit = 1; limit < full.iterations && !stopped_with_incumbent; ++limit) {
    ExactLimits tight = cold;
    tight.max_patterns = limit;
    try {
      const auto r = solve_exact(inst, tight);
      EXPECT_TRUE(r.budget_exceeded);
      EXPECT_EQ(r.status, SolveStatus::FeasibleHeuristic);
      EXPECT_TRUE(plan_violations(inst, r.plan).empty());
      EXPECT_LE(r.objective(), full.objective() + 1e-9);
      stopped_with_incumbent = true;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
  }
  EXPECT_TRUE(stopped_with_incumbent);

  ExactLimits none;
  none.time_budget = -1.0;
  EXPECT_EQ(code_of([&] { solve_exact(inst, none); }), ErrorCode::BudgetExceeded);
}

TEST(Exact, WarmStartOnlyPrunes) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = random_feasible_instance(seed * 7, 8, 3);
    ExactLimits cold;
    cold.warm_start = false;
    const auto a = solve_exact(inst, cold);
    const auto b = solve_exact(inst);
    EXPECT_NEAR(a.objective(), b.objective(), 1e-9) << "seed " << seed;
    EXPECT_EQ(a.plan.y, b.plan.y) << "seed " << seed;
  }
}

TEST(Exact, PairedInstanceSolvesQuickly) {
  const auto inst = paired_instance(1);
  ExactLimits limits;
  limits.time_budget = 30.0;
  const auto r = solve_exact(inst, limits);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_LT(r.wall_time, 30.0);
}

TEST(Exact, Deterministic) {
  const auto inst = random_feasible_instance(77);
  const auto a = solve_exact(inst);
  const auto b = solve_exact(inst);
  EXPECT_EQ(a.plan, b.plan);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Exact, NoStores) {
  auto inst = line_of_four();
  inst.stores.clear();
  const auto r = solve_exact(inst);
  EXPECT_EQ(r.objective(), 0.0);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
}
