#ifndef PADICROOTS_BUDGETS_HPP
#define PADICROOTS_BUDGETS_HPP

#include <cstdint>

namespace padicroots::budgets {

// Residue scans (root classification, Henselian lift scans): p^k and p^{2k}
// must stay below this many residues.
inline constexpr std::uint64_t kResidueScan = std::uint64_t(1) << 22;

// Full enumeration of an Upsilon_k space.
inline constexpr std::uint64_t kUpsilonEnumeration = std::uint64_t(1) << 24;

// Dense group V = (Z/qZ)^d used by the walk module.
inline constexpr std::uint64_t kGroupSize = std::uint64_t(1) << 20;

// Full Fourier transforms cost #V^2 work; keep them desk-sized.
inline constexpr std::uint64_t kFourierGroupSize = std::uint64_t(1) << 13;

// Brute-force solution counting for the Igusa check: p^{k*n} tuples.
inline constexpr std::uint64_t kIgusaScan = std::uint64_t(1) << 24;

// Exact expectation over all coefficient tuples: |support|^n.
inline constexpr std::uint64_t kSupportPower = std::uint64_t(1) << 22;

} // namespace padicroots::budgets

#endif
