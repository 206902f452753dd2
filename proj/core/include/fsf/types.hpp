#pragma once

#include <cstdint>
#include <limits>

namespace fsf {

using NodeId = std::uint32_t;
using MessageId = std::uint64_t;
using CommunityId = std::uint32_t;

/// Simulation clock in seconds. Trace timestamps are integral, transfer
/// completions are not.
using SimTime = double;

using Bytes = std::uint64_t;

inline constexpr Bytes kBytesPerMB = 1'000'000;       // MB = 10^6 bytes
inline constexpr double kBitsPerKbit = 1'000.0;       // kbps = 10^3 bit/s
inline constexpr Bytes kUnlimitedBytes = std::numeric_limits<Bytes>::max();

inline constexpr SimTime kSecondsPerDay = 86'400.0;

}  // namespace fsf
