#pragma once

#include <cstdint>

#include "weylflow/types.hpp"

namespace weylflow {

/// Counter-based generator: the i-th draw is a pure function of (seed, i),
/// so streams are reproducible across platforms and standard libraries.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller, one variate per two uniforms).
    double normal();
    Vec normal_vector(int n);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace weylflow
