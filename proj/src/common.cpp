#include "gromolab/common.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gromolab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t shard) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (shard + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double round_sig12(double x) {
    if (!std::isfinite(x)) return x;
    if (x == 0.0) return 0.0;  // merge -0.0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

int thread_cap() {
    if (const char* env = std::getenv("GROMOLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void run_sharded(int n_shards, const std::function<void(int)>& fn) {
    int workers = std::min(thread_cap(), n_shards);
    if (workers <= 1) {
        for (int s = 0; s < n_shards; ++s) fn(s);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int s = next.fetch_add(1); s < n_shards; s = next.fetch_add(1)) fn(s);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace gromolab
