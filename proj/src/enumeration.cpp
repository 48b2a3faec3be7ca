#include "ucf/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "ucf/canonical.hpp"
#include "ucf/errors.hpp"
#include "ucf/parallel.hpp"

namespace ucf {

namespace {

constexpr std::uint64_t bit(unsigned mask) { return std::uint64_t{1} << mask; }

// Shared per-run data: candidate masks in search order and the positions the
// canonical test has to scan.
class Search {
public:
    Search(const EnumerationConstraints& c, SearchOrder order)
        : c_(c), order_(order), group_(c.up_to_iso ? &symmetric_group(c.n) : nullptr) {
        const unsigned full = (1u << c.n) - 1;
        for (unsigned a = full; a > 0; --a) {
            if (std::popcount(a) < c.min_size) continue;
            positions_.push_back(static_cast<std::uint8_t>(a));
            if (!(c.require_universe && a == full)) candidates_.push_back(static_cast<std::uint8_t>(a));
        }
        if (order == SearchOrder::Ascending) std::reverse(candidates_.begin(), candidates_.end());
        base_ = c.require_universe ? bit(full) : 0;
    }

    std::uint64_t base() const { return base_; }
    const std::vector<std::uint8_t>& candidates() const { return candidates_; }

    bool canonical(std::uint64_t family) const { return !group_ || group_->is_canonical(family, positions_); }

    // Descending route: every member already present is larger than a, so
    // F + a is union-closed iff each a | b is present.
    static bool extends(std::uint64_t family, unsigned a) {
        for (std::uint64_t b = family; b != 0; b &= b - 1)
            if (!((family >> (a | static_cast<unsigned>(std::countr_zero(b)))) & 1u)) return false;
        return true;
    }

    // Ascending route: union-closure of F + a for union-closed F.
    static std::uint64_t close_with(std::uint64_t family, unsigned a) {
        std::uint64_t out = family | bit(a);
        for (std::uint64_t b = family; b != 0; b &= b - 1) out |= bit(a | static_cast<unsigned>(std::countr_zero(b)));
        return out;
    }

    std::uint64_t run(const Subtree& s, const FamilyVisitor& visit) {
        visit_ = &visit;
        count_ = 0;
        if (s.root_only)
            emit(s.family);
        else if (order_ == SearchOrder::Descending)
            descend(s.family, s.next);
        else
            ascend(s.family, s.forbidden, s.next);
        return count_;
    }

private:
    void emit(std::uint64_t family) {
        ++count_;
        if (*visit_) (*visit_)(PackedFamily{c_.n, family | 1u}.unpack());
    }

    void descend(std::uint64_t family, std::size_t next) {
        emit(family);
        for (std::size_t i = next; i < candidates_.size(); ++i) {
            const unsigned a = candidates_[i];
            if (!extends(family, a)) continue;
            const std::uint64_t child = family | bit(a);
            if (canonical(child)) descend(child, i + 1);
        }
    }

    void ascend(std::uint64_t family, std::uint64_t forbidden, std::size_t i) {
        for (; i < candidates_.size() && ((family >> candidates_[i]) & 1u); ++i) {
        }
        if (i == candidates_.size()) {
            if (canonical(family)) emit(family);
            return;
        }
        const unsigned a = candidates_[i];
        const std::uint64_t with = close_with(family, a);
        if ((with & forbidden) == 0) ascend(with, forbidden, i + 1);
        ascend(family, forbidden | bit(a), i + 1);
    }

    const EnumerationConstraints& c_;
    SearchOrder order_;
    const SymmetricGroupTables* group_;
    std::vector<std::uint8_t> candidates_;
    std::vector<std::uint8_t> positions_;
    std::uint64_t base_ = 0;

    const FamilyVisitor* visit_ = nullptr;
    std::uint64_t count_ = 0;
};

std::vector<SubsetMask> members_of(std::uint64_t family) {
    std::vector<SubsetMask> out;
    for (std::uint64_t b = family; b != 0; b &= b - 1) out.emplace_back(static_cast<std::uint32_t>(std::countr_zero(b)));
    return out;
}

void require_packable(const EnumerationConstraints& c) {
    if (c.n > kMaxPackedGround)
        throw InfeasibleScale("exhaustive search supports n <= 6, got n = " + std::to_string(c.n));
}

} // namespace

void EnumerationConstraints::validate() const {
    if (n < kMinGround || n > kMaxGround) throw PreconditionViolation("n must lie in [2, 12]");
    if (min_size < 1 || min_size > n) throw PreconditionViolation("t must lie in [1, n]");
}

std::string_view to_string(SearchOrder order) {
    return order == SearchOrder::Descending ? "descending" : "ascending";
}

void check_envelope(const EnumerationConstraints& c, bool unbounded) {
    c.validate();
    require_packable(c);
    if (c.n == 6 && c.min_size <= 2 && !unbounded)
        throw InfeasibleScale("n = 6 with t <= 2 is outside the supported envelope; pass --unbounded to run it anyway");
}

std::string Subtree::label() const {
    if (root.empty()) return "{}";
    std::string out;
    for (SubsetMask a : root) {
        if (!out.empty()) out += ',';
        out += std::to_string(a.bits());
    }
    return out;
}

std::vector<Subtree> top_level_subtrees(const EnumerationConstraints& c, SearchOrder order) {
    c.validate();
    require_packable(c);
    Search search(c, order);
    const std::uint64_t base = search.base();
    const auto& cand = search.candidates();

    std::vector<Subtree> out;
    out.push_back({members_of(base), true, base, 0, cand.size()});
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const unsigned a = cand[i];
        if (order == SearchOrder::Descending) {
            if (!Search::extends(base, a)) continue;
            const std::uint64_t family = base | bit(a);
            if (!search.canonical(family)) continue;
            out.push_back({members_of(family), false, family, 0, i + 1});
        } else {
            std::uint64_t forbidden = 0;
            for (std::size_t j = 0; j < i; ++j) forbidden |= bit(cand[j]);
            const std::uint64_t family = Search::close_with(base, a);
            out.push_back({members_of(family), false, family, forbidden, i + 1});
        }
    }
    return out;
}

std::uint64_t enumerate_subtree(const EnumerationConstraints& c, SearchOrder order, const Subtree& subtree,
                                const FamilyVisitor& visit) {
    c.validate();
    require_packable(c);
    Search search(c, order);
    return search.run(subtree, visit);
}

std::uint64_t enumerate_families(const EnumerationConstraints& c, const FamilyVisitor& visit,
                                 const EnumerationOptions& options) {
    check_envelope(c, options.unbounded);
    const std::vector<Subtree> subtrees = top_level_subtrees(c, options.order);

    std::mutex visit_mutex;
    const FamilyVisitor serialized = [&](const SetFamily& f) {
        std::lock_guard lock(visit_mutex);
        visit(f);
    };
    const FamilyVisitor& sink = options.serialize_visits && visit ? serialized : visit;

    std::vector<std::uint64_t> counts(subtrees.size(), 0);
    parallel_for_index(subtrees.size(), options.workers,
                       [&](std::size_t i) { counts[i] = enumerate_subtree(c, options.order, subtrees[i], sink); });
    std::uint64_t total = 0;
    for (std::uint64_t k : counts) total += k;
    return total;
}

std::vector<SetFamily> brute_force_enumerate(const EnumerationConstraints& c) {
    c.validate();
    require_packable(c);
    const unsigned full = (1u << c.n) - 1;
    std::vector<unsigned> pool;
    for (unsigned a = 1; a <= full; ++a)
        if (std::popcount(a) >= c.min_size) pool.push_back(a);
    if (pool.size() > static_cast<std::size_t>(kBruteForcePoolCap))
        throw InfeasibleScale("brute force over " + std::to_string(pool.size()) + " candidate sets exceeds the 2^" +
                              std::to_string(kBruteForcePoolCap) + " subset cap");

    const SymmetricGroupTables* group = c.up_to_iso ? &symmetric_group(c.n) : nullptr;
    std::vector<SetFamily> out;
    const std::uint64_t subsets = std::uint64_t{1} << pool.size();
    for (std::uint64_t choice = 0; choice < subsets; ++choice) {
        std::uint64_t family = 1; // {}
        unsigned support = 0;
        for (std::uint64_t b = choice; b != 0; b &= b - 1) {
            const unsigned a = pool[static_cast<std::size_t>(std::countr_zero(b))];
            family |= bit(a);
            support |= a;
        }
        if (c.require_universe && support != full) continue;

        bool closed = true;
        for (std::uint64_t x = family; x != 0 && closed; x &= x - 1)
            for (std::uint64_t y = x & (x - 1); y != 0; y &= y - 1)
                if (!((family >> (static_cast<unsigned>(std::countr_zero(x)) | static_cast<unsigned>(std::countr_zero(y)))) & 1u)) {
                    closed = false;
                    break;
                }
        if (!closed) continue;
        if (group && group->canonical(family) != family) continue;
        out.push_back(PackedFamily{c.n, family}.unpack());
    }
    return out;
}

} // namespace ucf
