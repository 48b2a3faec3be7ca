#include "ucf/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "ucf/errors.hpp"

namespace ucf {

namespace {

// Maximum matching size on vertex subsets of a graph with at most 64
// vertices. Branches on the lowest remaining vertex: either it stays
// unmatched or it is paired with one of its neighbours. Results are memoized
// per remaining-vertex set.
class MatchingSearch {
public:
    explicit MatchingSearch(std::vector<std::uint64_t> adjacency) : adj_(std::move(adjacency)) {}

    int best(std::uint64_t remaining) {
        if (remaining == 0) return 0;
        const int u = std::countr_zero(remaining);
        const std::uint64_t rest = remaining & (remaining - 1);
        std::uint64_t partners = adj_[static_cast<std::size_t>(u)] & rest;
        if (partners == 0) return best(rest);

        if (const auto it = memo_.find(remaining); it != memo_.end()) return it->second;

        const int ceiling = std::popcount(remaining) / 2;
        int result = 0;
        for (; partners != 0 && result < ceiling; partners &= partners - 1) {
            const std::uint64_t v = partners & (~partners + 1);
            result = std::max(result, 1 + best(rest & ~v));
        }
        if (result < ceiling) result = std::max(result, best(rest));
        memo_.emplace(remaining, result);
        return result;
    }

    std::uint64_t neighbours(std::size_t u) const { return adj_[u]; }

private:
    std::vector<std::uint64_t> adj_;
    std::unordered_map<std::uint64_t, int> memo_;
};

} // namespace

std::string_view to_string(ShapeTag tag) {
    switch (tag) {
    case ShapeTag::G3: return "G3";
    case ShapeTag::G3_G5: return "G3_G5";
    case ShapeTag::G3_G4: return "G3_G4";
    case ShapeTag::G3_G4_G5: return "G3_G4_G5";
    }
    return "?";
}

ShapeClass classify_shape(const SetFamily& f) {
    if (f.ground_size() != 6) throw NotInScope("shape classes are defined for n = 6 only");
    if (!f.has_empty_set()) throw NotInScope("the empty set is not a member");
    if (!f.contains(f.universe())) throw NotInScope("M_6 is not a member");
    if (!is_union_closed(f)) throw NotInScope("family is not union-closed");
    if (t_value(f) != 3) throw NotInScope("T(F) is not 3");

    LevelProfile levels = level_profile(f);
    const bool has4 = levels.at(4) > 0;
    const bool has5 = levels.at(5) > 0;
    ShapeTag tag = ShapeTag::G3;
    if (has4 && has5)
        tag = ShapeTag::G3_G4_G5;
    else if (has4)
        tag = ShapeTag::G3_G4;
    else if (has5)
        tag = ShapeTag::G3_G5;
    return {tag, std::move(levels)};
}

PairDecomposition pair_decompose(std::span<const SubsetMask> slice, SubsetMask target) {
    const std::size_t count = slice.size();
    if (count > 64) throw InfeasibleScale("pair_decompose handles at most 64 masks, got " + std::to_string(count));

    std::vector<std::uint64_t> adj(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            if (slice[i] == slice[j]) throw PreconditionViolation("slice members must be distinct");
            if ((slice[i] | slice[j]) == target) {
                adj[i] |= std::uint64_t{1} << j;
                adj[j] |= std::uint64_t{1} << i;
            }
        }
    }

    MatchingSearch search(std::move(adj));
    std::uint64_t remaining = count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
    int still_needed = search.best(remaining);

    // Greedy on the lowest remaining index: pair it with the smallest partner
    // that keeps a maximum matching reachable, or leave it in the residue.
    PairDecomposition out;
    while (remaining != 0) {
        const auto u = static_cast<std::size_t>(std::countr_zero(remaining));
        const std::uint64_t rest = remaining & (remaining - 1);
        bool paired = false;
        for (std::uint64_t partners = search.neighbours(u) & rest; partners != 0 && still_needed > 0;
             partners &= partners - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(partners));
            const std::uint64_t after = rest & ~(std::uint64_t{1} << v);
            if (1 + search.best(after) == still_needed) {
                out.pairs.emplace_back(u, v);
                remaining = after;
                --still_needed;
                paired = true;
                break;
            }
        }
        if (!paired) {
            out.residue.push_back(u);
            remaining = rest;
        }
    }
    return out;
}

ResidueSignature residue_union_signature(std::span<const SubsetMask> residue) {
    ResidueSignature sig;
    for (std::size_t i = 0; i < residue.size(); ++i)
        for (std::size_t j = i + 1; j < residue.size(); ++j) sig.emplace(std::pair{i, j}, residue[i] | residue[j]);
    return sig;
}

SubsetMask AbundanceWitness::mask() const {
    std::uint32_t bits = 0;
    for (const auto& e : elements) bits |= std::uint32_t{1} << (e.label - 1);
    return SubsetMask(bits);
}

AbundanceWitness abundance_witness(const SetFamily& f) {
    const int t = t_value(f);
    const FrequencyProfile p = frequency_profile(f);
    if (p.abundant.size() < t)
        throw WitnessUnavailable(std::to_string(p.abundant.size()) + " abundant element(s), fewer than T(F) = " +
                                 std::to_string(t));
    AbundanceWitness w;
    for (int label : p.abundant.labels()) w.elements.push_back({label, p.of(label), p.m});
    return w;
}

} // namespace ucf
