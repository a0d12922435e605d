#pragma once

#include "hk/poly.hpp"

namespace hk::par {

// Global kernel configuration. Parallel kernels are bit-identical to the
// serial references: exact rational addition commutes, so merge order does
// not matter.
struct Config {
    bool enabled = true;
    // Minimum term-pair count before the OpenMP kernels kick in.
    long threshold = 4096;
};

Config& config();

// jobs == 1 forces the serial path, jobs > 1 sets the OpenMP thread count,
// jobs == 0 keeps the OpenMP default.
void set_jobs(int jobs);
int max_threads();

Poly mul_openmp(const Poly& a, const Poly& b);

} // namespace hk::par
