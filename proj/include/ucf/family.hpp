#pragma once

// Set families over a small ground set M_n = {1..n}.
//
// A member is stored as a characteristic bit vector: element i is present iff
// bit (i - 1) is set. Families keep their members in strictly ascending mask
// order, so structural equality is plain vector equality.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ucf {

inline constexpr int kMinGround = 2;
inline constexpr int kMaxGround = 12;

class SubsetMask {
public:
    constexpr SubsetMask() = default;
    constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

    /// M_n, the all-ones mask on the low n bits.
    static constexpr SubsetMask full(int n) { return SubsetMask((std::uint32_t{1} << n) - 1); }

    /// Builds a mask from 1-based element labels.
    static constexpr SubsetMask of(std::initializer_list<int> labels) {
        std::uint32_t bits = 0;
        for (int label : labels) bits |= std::uint32_t{1} << (label - 1);
        return SubsetMask(bits);
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int label) const { return (bits_ >> (label - 1)) & 1u; }
    constexpr bool subset_of(SubsetMask other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool fits(int n) const { return (bits_ >> n) == 0; }

    /// Ascending 1-based labels.
    std::vector<int> labels() const;

    friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ | b.bits_); }
    friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & b.bits_); }
    friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
    friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

private:
    std::uint32_t bits_ = 0;
};

class SetFamily {
public:
    /// Sorts the members. Throws InvalidFamily when n is outside [2, 12], a
    /// member does not fit in n bits, or a member is repeated.
    SetFamily(int n, std::vector<SubsetMask> members);

    /// The family {} over M_n with no members at all.
    explicit SetFamily(int n) : SetFamily(n, {}) {}

    int ground_size() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::span<const SubsetMask> members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool contains(SubsetMask a) const;
    bool has_empty_set() const { return !members_.empty() && members_.front().empty(); }
    bool has_nonempty_member() const { return !members_.empty() && !members_.back().empty(); }
    SubsetMask universe() const { return SubsetMask::full(n_); }

    /// Union of all members.
    SubsetMask support() const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    int n_;
    std::vector<SubsetMask> members_;
};

struct LevelProfile {
    /// counts[k] = number of members of cardinality k, k = 0..n.
    std::vector<int> counts;

    int at(int k) const { return counts.at(static_cast<std::size_t>(k)); }
    int total() const;
    friend bool operator==(const LevelProfile&, const LevelProfile&) = default;
};

struct FrequencyProfile {
    /// freq[i - 1] = number of members containing element i.
    std::vector<int> freq;
    int m = 0;
    /// Elements i with 2 * freq[i] >= m.
    SubsetMask abundant;

    int of(int label) const { return freq.at(static_cast<std::size_t>(label - 1)); }
    friend bool operator==(const FrequencyProfile&, const FrequencyProfile&) = default;
};

struct Lemma12Result {
    int min_freq = 0;
    bool holds = false;
};

bool is_union_closed(const SetFamily& f);

/// Smallest union-closed superfamily of f.
SetFamily union_closure(const SetFamily& f);

/// Minimum cardinality of a nonempty member. Throws NoNonemptyMember.
int t_value(const SetFamily& f);

LevelProfile level_profile(const SetFamily& f);

/// Members of cardinality exactly k, ascending.
std::vector<SubsetMask> level_slice(const SetFamily& f, int k);

FrequencyProfile frequency_profile(const SetFamily& f);

/// Some element lies in at least half of the members (the empty set counts
/// towards m). Throws DegenerateFamily for F with no nonempty member.
bool frankl_holds(const SetFamily& f);

/// At least T(F) elements lie in at least half of the members. Throws
/// NoNonemptyMember when T(F) is undefined and NotApplicable when T(F) = 1.
bool s_frankl_holds(const SetFamily& f);

/// Measures the minimum, over i in `m`, of how many members of `coatoms`
/// contain i, and compares it with |coatoms| - 1. Every member must be an
/// (|m| - 1)-subset of `m` and there must be at least two of them, otherwise
/// PreconditionViolation.
Lemma12Result lemma_1_2_bound(SubsetMask m, const SetFamily& coatoms);

/// Applies the relabeling i -> perm[i - 1] + 1 to a mask. `perm` is a
/// permutation of 0..n-1.
SubsetMask relabel(SubsetMask a, std::span<const int> perm);

/// sigma . F, with sigma given as in relabel(SubsetMask, ...).
SetFamily relabel(const SetFamily& f, std::span<const int> perm);

} // namespace ucf
