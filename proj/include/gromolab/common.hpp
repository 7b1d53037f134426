#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace gromolab {

// Bad input or a geometric precondition violation. CLI exit code 2.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured budget. CLI exit code 2.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The backend cannot provide the requested operation. CLI exit code 2.
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic uniform values from mt19937_64. The mapping from raw 64-bit
// draws is pinned here so that reports never depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // n > 0; slight modulo bias is irrelevant for sampling duty here
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 gen_;
};

// Stable per-shard seed derivation (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t shard);

// Rounds to 12 significant decimal digits; everything serialized to JSON
// goes through this.
double round_sig12(double x);

// GROMOLAB_THREADS if set, else hardware concurrency (at least 1).
int thread_cap();

// Runs fn(shard) for every shard in [0, n_shards). The shard count is fixed
// by the caller, never by the thread count, so merged results are identical
// for any GROMOLAB_THREADS value.
void run_sharded(int n_shards, const std::function<void(int)>& fn);

}  // namespace gromolab
