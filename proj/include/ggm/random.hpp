#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ggm {

/// Samples are generated in fixed blocks, each with its own engine seeded
/// from (seed, block). Output therefore depends on the seed only.
inline constexpr std::size_t kSampleBlock = 4096;

inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Inverse-CDF draw from a probability vector.
std::size_t draw_index(std::mt19937_64& rng, const std::vector<double>& probs);

} // namespace ggm
