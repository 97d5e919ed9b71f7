#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hsbnet {

using Rng = std::mt19937_64;

/// Independent stream derived from a master seed.
///
/// Splitting rule: the engine is seeded through std::seed_seq over the 32-bit halves of
/// `master` followed by every word of `path` (e.g. {tag, replication}). Two different
/// paths yield unrelated streams; the same path always yields the same stream.
inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * path.size());
    words.push_back(static_cast<std::uint32_t>(master & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(master >> 32));
    for (auto p : path) {
        words.push_back(static_cast<std::uint32_t>(p & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(p >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

/// Uniform double in [0, 1) using the top 53 bits; stable across standard libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hsbnet
