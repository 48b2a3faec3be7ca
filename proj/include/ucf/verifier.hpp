#pragma once

// Campaign driver: enumerates families, runs the selected checks on each,
// and aggregates exact totals into a VerificationReport.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ucf/decomposition.hpp"
#include "ucf/enumeration.hpp"
#include "ucf/family.hpp"
#include "json.hpp"

namespace ucf {

enum class Check { Frankl, SFrankl, Lemma12Spot };

inline constexpr Check kAllChecks[] = {Check::Frankl, Check::SFrankl, Check::Lemma12Spot};

std::string_view to_string(Check check);

/// "frankl", "s_frankl" or "lemma_1_2_spot"; PreconditionViolation otherwise.
Check parse_check(std::string_view name);

struct Counterexample {
    SetFamily family;
    Check check;
    FrequencyProfile profile;
};

struct VerificationReport {
    EnumerationConstraints constraints;
    std::vector<Check> checks;
    /// False when the run stopped before every subtree was done.
    bool complete = true;

    std::uint64_t families_total = 0;
    /// Keyed by T(F); "none" for F = {{}}.
    std::map<std::string, std::uint64_t> families_by_T;
    /// Present only for n = 6, t = 3 runs with the universe required.
    std::optional<std::map<ShapeTag, std::uint64_t>> families_by_shape;
    /// How many families each check actually applied to.
    std::map<Check, std::uint64_t> checks_applied;
    /// Sorted by (family, check).
    std::vector<Counterexample> counterexamples;

    // Run metadata, excluded from the report body.
    std::uint64_t wall_time_ms = 0;
    unsigned worker_count = 1;
    SearchOrder order = SearchOrder::Descending;
    std::size_t subtrees_total = 0;
    std::size_t subtrees_completed = 0;
};

struct CampaignOptions {
    unsigned workers = 1;
    SearchOrder order = SearchOrder::Descending;
    bool unbounded = false;
    /// Resume from / append to this log.
    std::optional<std::filesystem::path> checkpoint;
    /// One family file per counterexample, written on detection.
    std::optional<std::filesystem::path> dump_dir;
    /// Lemma spot check runs on families whose hash is divisible by this.
    std::uint64_t lemma_sample_every = 1;
    /// Stop after this many subtrees have been run in this invocation.
    std::optional<std::size_t> stop_after_subtrees;
};

/// Propagates InfeasibleScale from the envelope check.
VerificationReport run_campaign(const EnumerationConstraints& c, const std::vector<Check>& checks,
                                const CampaignOptions& options = {});

/// Deterministic part of the report: independent of worker count, search
/// order and timing.
nlohmann::ordered_json report_body_json(const VerificationReport& r);

/// Body plus wall_time (milliseconds), worker_count and search details.
nlohmann::ordered_json report_json(const VerificationReport& r);

/// Everything check_single learns about one family.
struct FamilyRecord {
    SetFamily family;
    bool union_closed = false;
    /// Members union_closure adds; empty when already closed.
    std::vector<SubsetMask> closure_delta{};
    std::optional<int> t{};
    LevelProfile levels{};
    FrequencyProfile profile{};
    /// Unset when the predicate does not apply.
    std::optional<bool> frankl{};
    std::optional<bool> s_frankl{};
    std::optional<ShapeClass> shape{};
    /// T-level slice and its pairing against M_n.
    std::vector<SubsetMask> t_slice{};
    std::optional<PairDecomposition> pairs{};
    std::optional<AbundanceWitness> witness{};

    /// No applicable verdict is false.
    bool passed() const;
};

FamilyRecord check_single(const SetFamily& f);

nlohmann::ordered_json to_json(const FamilyRecord& r);

} // namespace ucf
