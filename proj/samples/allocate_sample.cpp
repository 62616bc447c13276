// Solves a distribution instance three ways and prints what each store gets.
//
//   allocate_sample [instance.json]
//
// Without an argument it builds the eight-shirt, six-store paired instance.

#include <cstdio>
#include <exception>

#include "stylemix/stylemix.hpp"

namespace {

void print_plan(const char *label, const stylemix::DistributionInstance &inst,
                const stylemix::DistributionPlan &plan) {
  std::printf("%s: objective %.6f\n", label, plan.objective);
  for (std::size_t s = 0; s < inst.num_stores(); ++s) {
    std::printf("  %-8s", inst.stores[s].id.c_str());
    for (auto i : plan.y.members(s))
      std::printf(" %s=%lld", inst.articles[i].id.c_str(),
                  static_cast<long long>(plan.x(i, s)));
    std::printf("   (variety %.4f)\n", plan.per_store_variety[s]);
  }
}

} // namespace

int main(int argc, char **argv) {
  try {
    const auto inst = argc > 1 ? stylemix::load_instance_file(argv[1])
                               : stylemix::paired_instance(1);

    print_plan("variety-blind", inst, stylemix::variety_blind_plan(inst));
    print_plan("heuristic", inst, stylemix::solve_heuristic(inst).plan);
    if (inst.num_articles() * inst.num_stores() <= 48)
      print_plan("exact", inst, stylemix::solve_exact(inst).plan);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
