#include "ucf/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "ucf/canonical.hpp"
#include "ucf/checkpoint.hpp"
#include "ucf/errors.hpp"
#include "ucf/family_io.hpp"
#include "ucf/parallel.hpp"

namespace ucf {

namespace {

using nlohmann::ordered_json;

struct Failure {
    std::uint64_t family; // packed, n <= 6
    Check check;

    friend auto operator<=>(const Failure&, const Failure&) = default;
};

// Per-subtree partial result; merging is a plain sum.
struct Tally {
    std::uint64_t count = 0;
    std::map<std::string, std::uint64_t> by_t;
    std::map<ShapeTag, std::uint64_t> by_shape;
    std::map<Check, std::uint64_t> applied;
    std::vector<Failure> failures;

    void merge(const Tally& o) {
        count += o.count;
        for (const auto& [k, v] : o.by_t) by_t[k] += v;
        for (const auto& [k, v] : o.by_shape) by_shape[k] += v;
        for (const auto& [k, v] : o.applied) applied[k] += v;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

std::string hex_word(std::uint64_t w) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
    return buf;
}

std::uint64_t parse_u64(const std::string& s, int base, std::size_t line_no) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used, base);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ParseError(line_no, "bad number '" + s + "' in checkpoint");
    return v;
}

// "a:1,b:2" <-> map; "-" stands for an empty map.
template <typename Key, typename KeyName>
std::string encode_counts(const std::map<Key, std::uint64_t>& m, KeyName name) {
    if (m.empty()) return "-";
    std::string out;
    for (const auto& [k, v] : m) {
        if (!out.empty()) out += ',';
        out += std::string(name(k)) + ":" + std::to_string(v);
    }
    return out;
}

std::vector<std::pair<std::string, std::uint64_t>> decode_counts(const std::string& s, std::size_t line_no) {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    if (s == "-" || s.empty()) return out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError(line_no, "bad count item '" + item + "' in checkpoint");
        out.emplace_back(item.substr(0, colon), parse_u64(item.substr(colon + 1), 10, line_no));
    }
    return out;
}

ShapeTag parse_shape(const std::string& s, std::size_t line_no) {
    for (ShapeTag tag : kAllShapes)
        if (to_string(tag) == s) return tag;
    throw ParseError(line_no, "unknown shape '" + s + "' in checkpoint");
}

CheckpointEntry encode_tally(const std::string& label, const Tally& t) {
    CheckpointEntry e{label, t.count, {}};
    e.fields.emplace_back("by_T", encode_counts(t.by_t, [](const std::string& k) { return k; }));
    e.fields.emplace_back("by_shape", encode_counts(t.by_shape, [](ShapeTag k) { return to_string(k); }));
    e.fields.emplace_back("applied", encode_counts(t.applied, [](Check k) { return to_string(k); }));
    std::string cex;
    for (const Failure& f : t.failures) {
        if (!cex.empty()) cex += ',';
        cex += std::string(to_string(f.check)) + "@" + hex_word(f.family);
    }
    e.fields.emplace_back("cex", cex.empty() ? "-" : cex);
    return e;
}

Tally decode_tally(const CheckpointEntry& e) {
    constexpr std::size_t line = 0;
    Tally t;
    t.count = e.count;
    for (const auto& [k, v] : decode_counts(e.field("by_T"), line)) t.by_t[k] = v;
    for (const auto& [k, v] : decode_counts(e.field("by_shape"), line)) t.by_shape[parse_shape(k, line)] = v;
    for (const auto& [k, v] : decode_counts(e.field("applied"), line)) t.applied[parse_check(k)] = v;
    const std::string cex = e.field("cex");
    if (!cex.empty() && cex != "-") {
        std::istringstream in(cex);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto at = item.find('@');
            if (at == std::string::npos) throw ParseError(line, "bad counterexample item '" + item + "'");
            t.failures.push_back({parse_u64(item.substr(at + 1), 16, line), parse_check(item.substr(0, at))});
        }
    }
    return t;
}

std::uint64_t family_hash(std::uint64_t packed) {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < 8; ++i) {
        h ^= (packed >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

// Writes one file per counterexample as soon as it is found.
class DumpSink {
public:
    explicit DumpSink(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
        if (dir_) std::filesystem::create_directories(*dir_);
    }

    void write(const SetFamily& f, Check check, std::uint64_t packed) {
        if (!dir_) return;
        std::lock_guard lock(mutex_);
        const auto path = *dir_ / ("cex_" + std::string(to_string(check)) + "_" + hex_word(packed) + ".txt");
        std::ofstream out(path);
        out << "# failed check: " << to_string(check) << '\n' << format_family(f);
        out.flush();
    }

private:
    std::optional<std::filesystem::path> dir_;
    std::mutex mutex_;
};

class FamilyChecker {
public:
    FamilyChecker(const EnumerationConstraints& c, const std::vector<Check>& checks, std::uint64_t lemma_every,
                  DumpSink& sink)
        : c_(c), lemma_every_(std::max<std::uint64_t>(lemma_every, 1)), sink_(sink),
          track_shapes_(c.n == 6 && c.min_size == 3 && c.require_universe) {
        for (Check k : checks) selected_[static_cast<std::size_t>(k)] = true;
    }

    bool tracks_shapes() const { return track_shapes_; }

    void operator()(const SetFamily& f, Tally& tally) const {
        ++tally.count;
        std::optional<int> t;
        if (f.has_nonempty_member()) t = t_value(f);
        ++tally.by_t[t ? std::to_string(*t) : "none"];
        if (track_shapes_ && t == 3) ++tally.by_shape[classify_shape(f).tag];

        const auto fail = [&](Check check) {
            const std::uint64_t packed = PackedFamily::pack(f).bits;
            tally.failures.push_back({packed, check});
            sink_.write(f, check, packed);
        };

        if (selected(Check::Frankl) && t) {
            ++tally.applied[Check::Frankl];
            if (!frankl_holds(f)) fail(Check::Frankl);
        }
        if (selected(Check::SFrankl) && t && *t >= 2) {
            ++tally.applied[Check::SFrankl];
            if (!s_frankl_holds(f)) fail(Check::SFrankl);
        }
        if (selected(Check::Lemma12Spot) && family_hash(PackedFamily::pack(f).bits) % lemma_every_ == 0) {
            const std::vector<SubsetMask> coatoms = level_slice(f, c_.n - 1);
            if (coatoms.size() >= 2) {
                ++tally.applied[Check::Lemma12Spot];
                if (!lemma_1_2_bound(f.universe(), SetFamily(c_.n, coatoms)).holds) fail(Check::Lemma12Spot);
            }
        }
    }

private:
    bool selected(Check k) const { return selected_[static_cast<std::size_t>(k)]; }

    const EnumerationConstraints& c_;
    std::uint64_t lemma_every_;
    DumpSink& sink_;
    bool track_shapes_;
    bool selected_[3] = {false, false, false};
};

std::string checkpoint_header(const EnumerationConstraints& c, const std::vector<Check>& checks,
                              const CampaignOptions& o) {
    std::string names;
    for (Check k : checks) names += (names.empty() ? "" : ",") + std::string(to_string(k));
    return "# ucf-checkpoint n=" + std::to_string(c.n) + " t=" + std::to_string(c.min_size) +
           " universe=" + (c.require_universe ? "1" : "0") + " iso=" + (c.up_to_iso ? "1" : "0") +
           " order=" + std::string(to_string(o.order)) + " checks=" + (names.empty() ? "-" : names) +
           " lemma_every=" + std::to_string(o.lemma_sample_every);
}

ordered_json profile_json(const FrequencyProfile& p) {
    return ordered_json{{"m", p.m}, {"freq", p.freq}, {"abundant", p.abundant.labels()}};
}

ordered_json masks_json(std::span<const SubsetMask> masks) {
    ordered_json out = ordered_json::array();
    for (SubsetMask a : masks) out.push_back(format_member(a));
    return out;
}

} // namespace

std::string_view to_string(Check check) {
    switch (check) {
    case Check::Frankl: return "frankl";
    case Check::SFrankl: return "s_frankl";
    case Check::Lemma12Spot: return "lemma_1_2_spot";
    }
    return "?";
}

Check parse_check(std::string_view name) {
    for (Check k : kAllChecks)
        if (to_string(k) == name) return k;
    throw PreconditionViolation("unknown check '" + std::string(name) + "' (expected frankl, s_frankl, lemma_1_2_spot)");
}

VerificationReport run_campaign(const EnumerationConstraints& c, const std::vector<Check>& checks,
                                const CampaignOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    check_envelope(c, options.unbounded);

    std::vector<Check> selected = checks;
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

    const std::vector<Subtree> subtrees = top_level_subtrees(c, options.order);
    std::optional<CheckpointFile> log;
    if (options.checkpoint) log.emplace(*options.checkpoint, checkpoint_header(c, selected, options));

    std::vector<std::optional<Tally>> tallies(subtrees.size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < subtrees.size(); ++i) {
        if (log) {
            const auto it = log->completed().find(subtrees[i].label());
            if (it != log->completed().end()) {
                tallies[i] = decode_tally(it->second);
                continue;
            }
        }
        pending.push_back(i);
    }
    if (options.stop_after_subtrees && pending.size() > *options.stop_after_subtrees)
        pending.resize(*options.stop_after_subtrees);

    DumpSink sink(options.dump_dir);
    const FamilyChecker checker(c, selected, options.lemma_sample_every, sink);
    parallel_for_index(pending.size(), options.workers, [&](std::size_t job) {
        const std::size_t i = pending[job];
        Tally tally;
        enumerate_subtree(c, options.order, subtrees[i], [&](const SetFamily& f) { checker(f, tally); });
        if (log) log->record(encode_tally(subtrees[i].label(), tally));
        tallies[i] = std::move(tally);
    });

    Tally total;
    std::size_t done = 0;
    for (const auto& t : tallies) {
        if (!t) continue;
        total.merge(*t);
        ++done;
    }
    std::sort(total.failures.begin(), total.failures.end());

    VerificationReport r;
    r.constraints = c;
    r.checks = selected;
    r.complete = done == subtrees.size();
    r.families_total = total.count;
    r.families_by_T = total.by_t;
    if (checker.tracks_shapes()) {
        std::map<ShapeTag, std::uint64_t> shapes;
        for (ShapeTag tag : kAllShapes) shapes[tag] = 0;
        for (const auto& [k, v] : total.by_shape) shapes[k] += v;
        r.families_by_shape = shapes;
    }
    for (Check k : selected) r.checks_applied[k] = total.applied.contains(k) ? total.applied.at(k) : 0;
    for (const Failure& f : total.failures) {
        SetFamily family = PackedFamily{c.n, f.family}.unpack();
        FrequencyProfile profile = frequency_profile(family);
        r.counterexamples.push_back({std::move(family), f.check, std::move(profile)});
    }
    r.worker_count = options.workers;
    r.order = options.order;
    r.subtrees_total = subtrees.size();
    r.subtrees_completed = done;
    r.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
    return r;
}

nlohmann::ordered_json report_body_json(const VerificationReport& r) {
    ordered_json body;
    body["constraints"] = {{"n", r.constraints.n},
                           {"t", r.constraints.min_size},
                           {"require_universe", r.constraints.require_universe},
                           {"up_to_iso", r.constraints.up_to_iso}};
    ordered_json checks = ordered_json::array();
    for (Check k : r.checks) checks.push_back(to_string(k));
    body["checks"] = checks;
    body["complete"] = r.complete;
    body["families_total"] = r.families_total;
    ordered_json by_t = ordered_json::object();
    for (const auto& [k, v] : r.families_by_T) by_t[k] = v;
    body["families_by_T"] = by_t;
    if (r.families_by_shape) {
        ordered_json shapes = ordered_json::object();
        for (const auto& [k, v] : *r.families_by_shape) shapes[std::string(to_string(k))] = v;
        body["families_by_shape"] = shapes;
    } else {
        body["families_by_shape"] = nullptr;
    }
    ordered_json applied = ordered_json::object();
    for (const auto& [k, v] : r.checks_applied) applied[std::string(to_string(k))] = v;
    body["checks_applied"] = applied;
    ordered_json cex = ordered_json::array();
    for (const Counterexample& x : r.counterexamples) {
        ordered_json item = {{"check", to_string(x.check)}, {"family", format_family(x.family)}};
        item["frequency"] = profile_json(x.profile);
        cex.push_back(item);
    }
    body["counterexamples"] = cex;
    return body;
}

nlohmann::ordered_json report_json(const VerificationReport& r) {
    ordered_json out = report_body_json(r);
    out["wall_time"] = r.wall_time_ms;
    out["worker_count"] = r.worker_count;
    out["search_order"] = to_string(r.order);
    out["subtrees"] = {{"total", r.subtrees_total}, {"completed", r.subtrees_completed}};
    return out;
}

bool FamilyRecord::passed() const { return frankl.value_or(true) && s_frankl.value_or(true); }

FamilyRecord check_single(const SetFamily& f) {
    FamilyRecord r{.family = f, .union_closed = is_union_closed(f)};
    if (!r.union_closed) {
        const SetFamily closed = union_closure(f);
        for (SubsetMask a : closed)
            if (!f.contains(a)) r.closure_delta.push_back(a);
    }
    r.levels = level_profile(f);
    r.profile = frequency_profile(f);
    if (f.has_nonempty_member()) r.t = t_value(f);

    if (r.union_closed && r.t) {
        r.frankl = frankl_holds(f);
        if (*r.t >= 2) r.s_frankl = s_frankl_holds(f);
        try {
            r.shape = classify_shape(f);
        } catch (const NotInScope&) {
        }
    }
    if (r.t) {
        r.t_slice = level_slice(f, *r.t);
        try {
            r.pairs = pair_decompose(r.t_slice, f.universe());
        } catch (const InfeasibleScale&) {
        }
        try {
            r.witness = abundance_witness(f);
        } catch (const WitnessUnavailable&) {
        }
    }
    return r;
}

nlohmann::ordered_json to_json(const FamilyRecord& r) {
    ordered_json out;
    out["family"] = format_family(r.family);
    out["union_closed"] = r.union_closed;
    out["closure_delta"] = masks_json(r.closure_delta);
    out["T"] = r.t ? ordered_json(*r.t) : ordered_json(nullptr);
    out["levels"] = r.levels.counts;
    out["frequency"] = profile_json(r.profile);
    out["frankl"] = r.frankl ? ordered_json(*r.frankl) : ordered_json(nullptr);
    out["s_frankl"] = r.s_frankl ? ordered_json(*r.s_frankl) : ordered_json(nullptr);
    out["shape"] = r.shape ? ordered_json(to_string(r.shape->tag)) : ordered_json(nullptr);
    if (r.pairs) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [i, j] : r.pairs->pairs) pairs.push_back({i, j});
        std::vector<SubsetMask> residue;
        for (std::size_t i : r.pairs->residue) residue.push_back(r.t_slice[i]);
        ordered_json unions = ordered_json::array();
        for (const auto& [ij, u] : residue_union_signature(residue))
            unions.push_back({{"pair", {ij.first, ij.second}}, {"union", format_member(u)}});
        out["pair_decomposition"] = {{"slice", masks_json(r.t_slice)},
                                     {"k", r.pairs->k()},
                                     {"pairs", pairs},
                                     {"residue", r.pairs->residue},
                                     {"residue_unions", unions}};
    } else {
        out["pair_decomposition"] = nullptr;
    }
    if (r.witness) {
        ordered_json elems = ordered_json::array();
        for (const auto& e : r.witness->elements) elems.push_back({{"label", e.label}, {"freq", e.freq}, {"m", e.m}});
        out["witness"] = elems;
    } else {
        out["witness"] = nullptr;
    }
    out["verdict"] = !r.union_closed ? "not_union_closed" : (r.passed() ? "pass" : "fail");
    return out;
}

} // namespace ucf
