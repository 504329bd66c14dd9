#pragma once

#include <cstddef>
#include <functional>

namespace envsieve {

// Worker count used by the scans; 0 restores the hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, tasks). Callers write into per-task slots and
// merge in index order, so results do not depend on scheduling.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& fn);

// Pairwise summation; deterministic and accurate enough for 10^9 terms.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace envsieve
