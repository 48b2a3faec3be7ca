#include "ucf/canonical.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "ucf/errors.hpp"
#include "ucf/family_io.hpp"

namespace ucf {

PackedFamily PackedFamily::pack(const SetFamily& f) {
    if (f.ground_size() > kMaxPackedGround)
        throw InfeasibleScale("packed families need n <= 6, got n = " + std::to_string(f.ground_size()));
    PackedFamily p{f.ground_size(), 0};
    for (SubsetMask a : f) p.bits |= std::uint64_t{1} << a.bits();
    return p;
}

SetFamily PackedFamily::unpack() const {
    std::vector<SubsetMask> members;
    members.reserve(static_cast<std::size_t>(std::popcount(bits)));
    for (std::uint64_t b = bits; b != 0; b &= b - 1) members.emplace_back(static_cast<std::uint32_t>(std::countr_zero(b)));
    return SetFamily(n, std::move(members));
}

SymmetricGroupTables::SymmetricGroupTables(int n) : n_(n) {
    if (n < 1 || n > kMaxPackedGround) throw InfeasibleScale("symmetric group tables need 1 <= n <= 6");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const unsigned subsets = 1u << n;
    do {
        std::array<std::uint8_t, 64> img{};
        std::array<std::uint8_t, 64> pre{};
        for (unsigned a = 0; a < subsets; ++a) {
            const auto b = static_cast<std::uint8_t>(relabel(SubsetMask(a), perm).bits());
            img[a] = b;
            pre[b] = static_cast<std::uint8_t>(a);
        }
        image_.push_back(img);
        preimage_.push_back(pre);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::uint64_t SymmetricGroupTables::apply(std::size_t perm, std::uint64_t family) const {
    const auto& img = image_[perm];
    std::uint64_t out = 0;
    for (std::uint64_t b = family; b != 0; b &= b - 1) out |= std::uint64_t{1} << img[std::countr_zero(b)];
    return out;
}

std::uint64_t SymmetricGroupTables::canonical(std::uint64_t family) const {
    std::uint64_t best = family;
    for (std::size_t p = 1; p < image_.size(); ++p) best = std::max(best, apply(p, family));
    return best;
}

bool SymmetricGroupTables::is_canonical(std::uint64_t family, const std::vector<std::uint8_t>& positions) const {
    // Compare sigma . F against F from the most significant position down;
    // bit A of sigma . F is bit sigma^{-1}(A) of F. Index 0 is the identity.
    for (std::size_t p = 1; p < preimage_.size(); ++p) {
        const auto& pre = preimage_[p];
        for (std::uint8_t pos : positions) {
            const std::uint64_t mine = (family >> pos) & 1u;
            const std::uint64_t theirs = (family >> pre[pos]) & 1u;
            if (theirs != mine) {
                if (theirs > mine) return false;
                break;
            }
        }
    }
    return true;
}

const SymmetricGroupTables& symmetric_group(int n) {
    static const std::vector<SymmetricGroupTables> tables = [] {
        std::vector<SymmetricGroupTables> t;
        for (int k = 1; k <= kMaxPackedGround; ++k) t.emplace_back(k);
        return t;
    }();
    if (n < 1 || n > kMaxPackedGround) throw InfeasibleScale("symmetric group tables need 1 <= n <= 6");
    return tables[static_cast<std::size_t>(n - 1)];
}

bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
    if (a.family.ground_size() != b.family.ground_size()) return a.family.ground_size() < b.family.ground_size();
    return std::lexicographical_compare(a.family.begin(), a.family.end(), b.family.begin(), b.family.end());
}

CanonicalKey canonical_key(const SetFamily& f) {
    const int n = f.ground_size();
    if (n <= kMaxPackedGround) {
        const PackedFamily packed = PackedFamily::pack(f);
        return {PackedFamily{n, symmetric_group(n).canonical(packed.bits)}.unpack()};
    }
    if (n > kMaxCanonicalGround)
        throw InfeasibleScale("canonical_key scans all n! relabelings; n = " + std::to_string(n) + " is too large");

    // Same order as the packed form: descending member lists, greatest wins.
    const auto descending = [](std::vector<SubsetMask> v) {
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    };
    std::vector<SubsetMask> best = descending({f.begin(), f.end()});
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SubsetMask> image(f.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::transform(f.begin(), f.end(), image.begin(), [&](SubsetMask a) { return relabel(a, perm); });
        std::sort(image.begin(), image.end(), std::greater<>());
        if (image > best) best = image;
    }
    return {SetFamily(n, std::move(best))};
}

std::string to_string(const CanonicalKey& key) { return format_family_inline(key.family); }

} // namespace ucf
