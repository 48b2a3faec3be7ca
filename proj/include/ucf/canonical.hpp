#pragma once

// Orbit representatives under relabeling by the symmetric group S_n.
//
// For n <= 6 a family is packed into one 64-bit word: bit A is set iff the
// subset with mask A is a member. The representative of an orbit is the
// relabeling whose packed word is largest, i.e. whose member list, read in
// descending mask order, is lexicographically greatest. Dropping the smallest
// member of a representative leaves a representative, which is what makes
// orderly generation in descending mask order work.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ucf/family.hpp"

namespace ucf {

inline constexpr int kMaxPackedGround = 6;
inline constexpr int kMaxCanonicalGround = 8;

/// A family over M_n, n <= 6, as a 2^n-bit membership word.
struct PackedFamily {
    int n = 0;
    std::uint64_t bits = 0;

    static PackedFamily pack(const SetFamily& f);
    SetFamily unpack() const;

    friend bool operator==(const PackedFamily&, const PackedFamily&) = default;
};

/// Subset images under every permutation of M_n, n <= 6.
class SymmetricGroupTables {
public:
    explicit SymmetricGroupTables(int n);

    int ground_size() const { return n_; }
    std::size_t order() const { return image_.size(); }

    /// sigma . F for the permutation with the given index.
    std::uint64_t apply(std::size_t perm, std::uint64_t family) const;

    /// Largest packed word in the orbit of `family`.
    std::uint64_t canonical(std::uint64_t family) const;

    /// True iff no relabeling yields a larger word. `positions` lists the
    /// masks that may be members, in descending order; masks outside it
    /// must be absent. The empty set never needs to be listed.
    bool is_canonical(std::uint64_t family, const std::vector<std::uint8_t>& positions) const;

private:
    int n_;
    // image_[p][A] = sigma_p(A); preimage_[p][A] = sigma_p^{-1}(A).
    std::vector<std::array<std::uint8_t, 64>> image_;
    std::vector<std::array<std::uint8_t, 64>> preimage_;
};

/// Shared tables for n = 2..6, built on first use.
const SymmetricGroupTables& symmetric_group(int n);

struct CanonicalKey {
    /// The orbit representative, in ordinary ascending storage order.
    SetFamily family;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b);
};

/// Representative of the relabeling orbit of f. n <= 8; beyond that the
/// n! scan is refused with InfeasibleScale.
CanonicalKey canonical_key(const SetFamily& f);

/// One-line text form, suitable for sorting and diffing.
std::string to_string(const CanonicalKey& key);

} // namespace ucf
