#include "ucf/family.hpp"

#include <algorithm>
#include <bitset>
#include <string>

#include "ucf/errors.hpp"

namespace ucf {

namespace {

// Membership table over 2^n masks; n <= 12 keeps it at 4096 bits.
using MaskTable = std::bitset<std::size_t{1} << kMaxGround>;

MaskTable table_of(const SetFamily& f) {
    MaskTable t;
    for (SubsetMask a : f) t.set(a.bits());
    return t;
}

} // namespace

std::vector<int> SubsetMask::labels() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
}

SetFamily::SetFamily(int n, std::vector<SubsetMask> members) : n_(n), members_(std::move(members)) {
    if (n < kMinGround || n > kMaxGround)
        throw InvalidFamily("ground size " + std::to_string(n) + " outside [2, 12]");
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!members_[i].fits(n))
            throw InvalidFamily("member mask " + std::to_string(members_[i].bits()) + " does not fit in " +
                                std::to_string(n) + " bits");
        if (i > 0 && members_[i] == members_[i - 1])
            throw InvalidFamily("duplicate member mask " + std::to_string(members_[i].bits()));
    }
}

bool SetFamily::contains(SubsetMask a) const { return std::binary_search(members_.begin(), members_.end(), a); }

SubsetMask SetFamily::support() const {
    SubsetMask u;
    for (SubsetMask a : members_) u = u | a;
    return u;
}

int LevelProfile::total() const {
    int s = 0;
    for (int c : counts) s += c;
    return s;
}

bool is_union_closed(const SetFamily& f) {
    const MaskTable t = table_of(f);
    const auto ms = f.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (!t.test((ms[i] | ms[j]).bits())) return false;
    return true;
}

SetFamily union_closure(const SetFamily& f) {
    MaskTable seen = table_of(f);
    std::vector<SubsetMask> all(f.begin(), f.end());
    // Every pair (i, j) with j < i is joined once; appended members get
    // paired with everything before them when the outer loop reaches them.
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const SubsetMask u = all[i] | all[j];
            if (!seen.test(u.bits())) {
                seen.set(u.bits());
                all.push_back(u);
            }
        }
    }
    return SetFamily(f.ground_size(), std::move(all));
}

int t_value(const SetFamily& f) {
    int best = 0;
    for (SubsetMask a : f)
        if (!a.empty() && (best == 0 || a.size() < best)) best = a.size();
    if (best == 0) throw NoNonemptyMember("T(F) is undefined: the family has no nonempty member");
    return best;
}

LevelProfile level_profile(const SetFamily& f) {
    LevelProfile p;
    p.counts.assign(static_cast<std::size_t>(f.ground_size()) + 1, 0);
    for (SubsetMask a : f) ++p.counts[static_cast<std::size_t>(a.size())];
    return p;
}

std::vector<SubsetMask> level_slice(const SetFamily& f, int k) {
    std::vector<SubsetMask> out;
    for (SubsetMask a : f)
        if (a.size() == k) out.push_back(a);
    return out;
}

FrequencyProfile frequency_profile(const SetFamily& f) {
    FrequencyProfile p;
    const int n = f.ground_size();
    p.freq.assign(static_cast<std::size_t>(n), 0);
    p.m = static_cast<int>(f.size());
    for (SubsetMask a : f)
        for (std::uint32_t b = a.bits(); b != 0; b &= b - 1) ++p.freq[static_cast<std::size_t>(std::countr_zero(b))];
    std::uint32_t abundant = 0;
    for (int i = 0; i < n; ++i)
        if (2 * p.freq[static_cast<std::size_t>(i)] >= p.m) abundant |= std::uint32_t{1} << i;
    p.abundant = SubsetMask(abundant);
    return p;
}

bool frankl_holds(const SetFamily& f) {
    if (!f.has_nonempty_member()) throw DegenerateFamily("Frankl's property is not stated for F contained in {{}}");
    return !frequency_profile(f).abundant.empty();
}

bool s_frankl_holds(const SetFamily& f) {
    const int t = t_value(f);
    if (t < 2) throw NotApplicable("S-Frankl is stated for T(F) >= 2, got T(F) = 1");
    return frequency_profile(f).abundant.size() >= t;
}

Lemma12Result lemma_1_2_bound(SubsetMask m, const SetFamily& coatoms) {
    if (m.size() < 2) throw PreconditionViolation("|M| must be at least 2");
    if (coatoms.size() < 2) throw PreconditionViolation("at least two co-atoms are required");
    for (SubsetMask g : coatoms)
        if (!g.subset_of(m) || g.size() != m.size() - 1)
            throw PreconditionViolation("member " + std::to_string(g.bits()) + " is not a co-atom of M");

    int min_freq = static_cast<int>(coatoms.size());
    for (int label : m.labels()) {
        int c = 0;
        for (SubsetMask g : coatoms) c += g.contains(label) ? 1 : 0;
        min_freq = std::min(min_freq, c);
    }
    return {min_freq, min_freq >= static_cast<int>(coatoms.size()) - 1};
}

SubsetMask relabel(SubsetMask a, std::span<const int> perm) {
    std::uint32_t out = 0;
    for (std::uint32_t b = a.bits(); b != 0; b &= b - 1)
        out |= std::uint32_t{1} << perm[static_cast<std::size_t>(std::countr_zero(b))];
    return SubsetMask(out);
}

SetFamily relabel(const SetFamily& f, std::span<const int> perm) {
    if (perm.size() != static_cast<std::size_t>(f.ground_size()))
        throw PreconditionViolation("permutation length does not match the ground size");
    std::vector<SubsetMask> out;
    out.reserve(f.size());
    for (SubsetMask a : f) out.push_back(relabel(a, perm));
    return SetFamily(f.ground_size(), std::move(out));
}

} // namespace ucf
