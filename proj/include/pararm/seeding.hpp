#pragma once

#include <cstdint>

namespace pararm {

/// Deterministic child-stream derivation:
///   child(base, index) = mix64(base XOR 0x9E3779B97F4A7C15 * (index + 1))
/// where mix64 is the SplitMix64 finalizer. The constants are fixed so other
/// implementations can reproduce per-run seeds exactly.
std::uint64_t child_seed(std::uint64_t base, std::uint64_t index);

}  // namespace pararm
