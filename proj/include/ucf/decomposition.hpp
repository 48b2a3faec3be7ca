#pragma once

// Proof devices for n = 6, T(F) = 3 families as algorithms: the four-way shape
// split by which of the levels 4 and 5 are occupied, maximum pairings of a
// level slice into pairs whose union is a target set, and abundance
// witnesses.

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ucf/family.hpp"

namespace ucf {

enum class ShapeTag { G3, G3_G5, G3_G4, G3_G4_G5 };

inline constexpr ShapeTag kAllShapes[] = {ShapeTag::G3, ShapeTag::G3_G5, ShapeTag::G3_G4, ShapeTag::G3_G4_G5};

std::string_view to_string(ShapeTag tag);

struct ShapeClass {
    ShapeTag tag;
    LevelProfile levels;
};

/// Requires n = 6, F union-closed, {} and M_6 in F, T(F) = 3; otherwise
/// throws NotInScope.
ShapeClass classify_shape(const SetFamily& f);

/// A maximum set of disjoint index pairs (i, j), i < j, whose masks join to
/// the target, plus the unmatched indices. Among all maximum pairings the
/// lexicographically least pair list is returned.
struct PairDecomposition {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> residue;

    std::size_t k() const { return pairs.size(); }
};

/// Slice members must be distinct (PreconditionViolation otherwise). Slices
/// longer than 64 masks raise InfeasibleScale.
PairDecomposition pair_decompose(std::span<const SubsetMask> slice, SubsetMask target);

/// (i, j) with i < j, indices into the residue list, mapped to the union of
/// the two masks.
using ResidueSignature = std::map<std::pair<std::size_t, std::size_t>, SubsetMask>;

ResidueSignature residue_union_signature(std::span<const SubsetMask> residue);

struct ElementCertificate {
    int label;
    int freq;
    int m;

    friend bool operator==(const ElementCertificate&, const ElementCertificate&) = default;
};

struct AbundanceWitness {
    /// Ascending by label; every entry satisfies 2 * freq >= m.
    std::vector<ElementCertificate> elements;

    SubsetMask mask() const;
};

/// All abundant elements with their counts. Throws WitnessUnavailable when
/// fewer than T(F) elements are abundant, NoNonemptyMember when T(F) is
/// undefined.
AbundanceWitness abundance_witness(const SetFamily& f);

} // namespace ucf
