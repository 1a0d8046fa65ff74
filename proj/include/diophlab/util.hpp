#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "diophlab/rational.hpp"

namespace diophlab {

// Deterministic RNG wrapper. std::mt19937_64 output is pinned by the
// standard; the bounded samplers below are written out explicitly because
// std::uniform_int_distribution is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error("Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = gen_(); } while (v >= limit);
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Random rational with |numerator| <= maxNum and 1 <= denominator <= maxDen.
    Rational rational(long long maxNum, long long maxDen) {
        Integer p(range(-maxNum, maxNum));
        Integer q(range(1, maxDen));
        return Rational(p, q);
    }

    // Derive an independent stream for a named sub-task.
    Rng fork(const std::string& name) const;

    std::uint64_t state_seed() const { return seed_hint_; }

private:
    std::mt19937_64 gen_;
    std::uint64_t seed_hint_ = 0;
};

// FNV-1a, used for config hashes and polynomial hashes in reports.
std::uint64_t fnv1a(const std::string& data);
std::string hex64(std::uint64_t v);

// Chunked deterministic map-reduce: results are combined in chunk order,
// so the outcome never depends on thread scheduling.
template <typename Acc>
Acc parallel_reduce(std::size_t count, int threads,
                    const std::function<Acc(std::size_t, std::size_t)>& chunk_fn,
                    const std::function<Acc(Acc, Acc)>& combine, Acc init) {
    if (count == 0) return init;
    if (threads < 2 || count < 1024) return combine(init, chunk_fn(0, count));
    const std::size_t nchunk = static_cast<std::size_t>(threads);
    const std::size_t step = (count + nchunk - 1) / nchunk;
    std::vector<Acc> results;
    results.reserve(nchunk);
    std::vector<std::thread> pool;
    std::vector<Acc> slot(nchunk, init);
    for (std::size_t c = 0; c < nchunk; ++c) {
        const std::size_t lo = c * step;
        const std::size_t hi = std::min(count, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&, c, lo, hi]() { slot[c] = chunk_fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
    Acc acc = init;
    for (std::size_t c = 0; c < nchunk && c * step < count; ++c) acc = combine(acc, slot[c]);
    return acc;
}

// Lexicographic comparison of integer vectors.
int cmp_vec(const IntVector& a, const IntVector& b);

std::string version_string();

} // namespace diophlab
