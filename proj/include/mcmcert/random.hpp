#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace mcmcert {

/// splitmix64 finalizer; mixes a base seed with a stream index so that
/// sub-generators (resample attempts, probe points) are independent.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// mt19937_64 plus rejection sampling, so draws are identical across
/// standard library implementations (std::uniform_int_distribution is not).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    std::vector<mpq_class> integer_point(int n, long bound) {
        std::vector<mpq_class> p(static_cast<std::size_t>(n + 1));
        do {
            for (auto& c : p) c = uniform(-bound, bound);
        } while (std::all_of(p.begin(), p.end(), [](const mpq_class& c) { return c == 0; }));
        return p;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mcmcert
