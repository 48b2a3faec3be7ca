#pragma once

// Exhaustive generation of union-closed families F over M_n (n <= 6) with
// {} in F and every nonempty member of size >= t, optionally one family per
// relabeling class.
//
// Two independent search routes produce the same visit set:
//
//  * Descending: orderly generation. Members are added in descending mask
//    order. A prefix (members above some mask) of a union-closed family is
//    union-closed, so adding a set only has to be checked against the members
//    already chosen. Non-canonical nodes are cut, which prunes whole orbits.
//  * Ascending: include/exclude decisions in ascending mask order. Including A
//    forces every A | B for chosen B; the branch dies if a forced set was
//    already excluded. Every labeled family is reached and the canonical test
//    runs at the leaves.
//
// Work is split into top-level subtrees that can be run independently.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ucf/family.hpp"

namespace ucf {

struct EnumerationConstraints {
    int n = 0;
    /// Minimum size t of a nonempty member.
    int min_size = 1;
    /// Require the members to cover M_n.
    bool require_universe = true;
    /// Visit one family per relabeling class.
    bool up_to_iso = false;

    /// Throws PreconditionViolation unless 2 <= n <= 12 and 1 <= t <= n.
    void validate() const;

    friend bool operator==(const EnumerationConstraints&, const EnumerationConstraints&) = default;
};

enum class SearchOrder { Descending, Ascending };

std::string_view to_string(SearchOrder order);

/// Throws InfeasibleScale outside the campaign envelope: n must be at most
/// 6, and n = 6 with t <= 2 needs `unbounded`.
void check_envelope(const EnumerationConstraints& c, bool unbounded);

/// An independent slice of the search.
struct Subtree {
    /// Members (without {}) of the family the subtree starts from, ascending.
    /// Doubles as the checkpoint label.
    std::vector<SubsetMask> root;
    /// True for the single-node unit that visits only the search root.
    bool root_only = false;

    std::uint64_t family = 0;    // packed, {} implicit
    std::uint64_t forbidden = 0; // ascending route: excluded masks
    std::size_t next = 0;        // next candidate index

    /// "63,62" style label, "{}" when the root has no nonempty member.
    std::string label() const;
};

/// An empty visitor turns a run into a pure count.
using FamilyVisitor = std::function<void(const SetFamily&)>;

/// Deterministic, ordered list of subtrees covering the whole search.
std::vector<Subtree> top_level_subtrees(const EnumerationConstraints& c, SearchOrder order);

/// Runs one subtree; returns the number of visited families.
std::uint64_t enumerate_subtree(const EnumerationConstraints& c, SearchOrder order, const Subtree& subtree,
                                const FamilyVisitor& visit);

struct EnumerationOptions {
    unsigned workers = 1;
    SearchOrder order = SearchOrder::Descending;
    /// Deliver visits one at a time; otherwise `visit` may run concurrently.
    bool serialize_visits = false;
    bool unbounded = false;
};

/// Visits every family satisfying the constraints exactly once (per class
/// when up_to_iso) and returns the count.
std::uint64_t enumerate_families(const EnumerationConstraints& c, const FamilyVisitor& visit,
                                 const EnumerationOptions& options = {});

/// Largest candidate pool brute_force_enumerate will scan (2^22 subsets).
inline constexpr int kBruteForcePoolCap = 22;

/// Filters every subset of the candidate pool (all sets of size >= t) for the
/// same predicate. Throws InfeasibleScale for n > 6 or pools above the cap.
std::vector<SetFamily> brute_force_enumerate(const EnumerationConstraints& c);

} // namespace ucf
