#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "spdp/errors.hpp"

namespace spdp {

// splitmix64: fixed, replayable mixing function. Used wherever the artifact
// needs seed-derived randomness that must be bit-stable across platforms.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Mix a seed with a counter; the basis of all deterministic sampling here.
inline uint64_t hash_pair(uint64_t seed, uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x51ed2701a3c5e1b7ULL));
}

// Uniform double in [0, 1) from a hash value.
inline double unit_double(uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Exact binomial coefficient; throws SizeError on uint64 overflow.
inline uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t result = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        __uint128_t wide = static_cast<__uint128_t>(result) * (n - k + i);
        wide /= i;  // exact: product of i consecutive integers is divisible by i!
        if (wide > std::numeric_limits<uint64_t>::max())
            throw SizeError("binomial coefficient overflows 64 bits");
        result = static_cast<uint64_t>(wide);
    }
    return result;
}

// Enumerate all k-subsets of {0,...,n-1} in lexicographic order.
inline void for_each_subset(uint32_t n, uint32_t k,
                            const std::function<void(const std::vector<uint32_t>&)>& fn) {
    if (k > n) return;
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        if (k == 0) return;
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<uint32_t>(i)] == static_cast<uint32_t>(i) + n - k) --i;
        if (i < 0) return;
        ++idx[static_cast<uint32_t>(i)];
        for (uint32_t j = static_cast<uint32_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// All subsets of sizes 0..k inclusive, sizes ascending.
inline void for_each_subset_le(uint32_t n, uint32_t k,
                               const std::function<void(const std::vector<uint32_t>&)>& fn) {
    for (uint32_t sz = 0; sz <= k && sz <= n; ++sz) for_each_subset(n, sz, fn);
}

}  // namespace spdp
