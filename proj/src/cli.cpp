#include "ucf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "ucf/canonical.hpp"
#include "ucf/enumeration.hpp"
#include "ucf/errors.hpp"
#include "ucf/family_io.hpp"
#include "ucf/verifier.hpp"

namespace ucf {

namespace {

struct CliConfig {
    std::string subcommand;
    int n = 0;
    int t = 1;
    bool up_to_iso = false;
    bool no_universe = false;
    std::vector<std::string> checks = {"frankl", "s_frankl", "lemma_1_2_spot"};
    std::string input;
    std::string output;
    std::string keys;
    std::string report;
    std::string checkpoint;
    std::string dump_dir;
    std::string order = "desc";
    unsigned workers = 0;
    bool unbounded = false;
    std::uint64_t lemma_every = 1;
    std::size_t stop_after = 0;

    EnumerationConstraints constraints() const { return {n, t, !no_universe, up_to_iso}; }

    SearchOrder search_order() const { return order == "asc" ? SearchOrder::Ascending : SearchOrder::Descending; }

    unsigned resolved_workers() const {
        if (workers > 0) return workers;
        if (const char* env = std::getenv("UCF_WORKERS")) {
            const int w = std::atoi(env);
            if (w > 0) return static_cast<unsigned>(w);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionViolation("cannot write " + path);
    out << text;
}

std::string sorted_keys(const std::vector<SetFamily>& families) {
    std::vector<std::string> keys;
    keys.reserve(families.size());
    for (const SetFamily& f : families) keys.push_back(to_string(canonical_key(f)));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const std::string& k : keys) out += k + "\n";
    return out;
}

int cmd_check(const CliConfig& cfg, std::ostream& out) {
    const FamilyRecord record = check_single(read_family_file(cfg.input));
    out << to_json(record).dump(2) << '\n';
    return record.passed() ? kExitPass : kExitCounterexample;
}

int cmd_closure(const CliConfig& cfg, std::ostream& out) {
    const SetFamily closed = union_closure(read_family_file(cfg.input));
    if (cfg.output.empty())
        out << format_family(closed);
    else
        write_text(cfg.output, format_family(closed));
    return kExitPass;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    std::vector<Check> checks;
    for (const std::string& name : cfg.checks) checks.push_back(parse_check(name));

    CampaignOptions options;
    options.workers = cfg.resolved_workers();
    options.order = cfg.search_order();
    options.unbounded = cfg.unbounded;
    options.lemma_sample_every = cfg.lemma_every;
    if (!cfg.checkpoint.empty()) options.checkpoint = cfg.checkpoint;
    if (!cfg.dump_dir.empty()) options.dump_dir = cfg.dump_dir;
    if (cfg.stop_after > 0) options.stop_after_subtrees = cfg.stop_after;

    const VerificationReport r = run_campaign(cfg.constraints(), checks, options);
    if (!cfg.report.empty()) write_text(cfg.report, report_json(r).dump(2) + "\n");

    out << "n=" << r.constraints.n << " t=" << r.constraints.min_size
        << (r.constraints.up_to_iso ? " (up to relabeling)" : " (labeled)") << '\n';
    out << "families_total      " << r.families_total << '\n';
    for (const auto& [t, count] : r.families_by_T) out << "  T=" << t << std::string(17 - t.size(), ' ') << count << '\n';
    if (r.families_by_shape)
        for (const auto& [tag, count] : *r.families_by_shape) {
            const std::string name(to_string(tag));
            out << "  shape " << name << std::string(13 - name.size(), ' ') << count << '\n';
        }
    for (const auto& [check, count] : r.checks_applied) {
        const std::string name(to_string(check));
        out << "  checked " << name << std::string(std::max<std::size_t>(1, 16 - name.size()), ' ') << count << '\n';
    }
    out << "counterexamples     " << r.counterexamples.size() << '\n';
    out << "subtrees            " << r.subtrees_completed << "/" << r.subtrees_total << '\n';
    out << "workers             " << r.worker_count << '\n';
    out << "wall_time_ms        " << r.wall_time_ms << '\n';

    if (!r.counterexamples.empty()) return kExitCounterexample;
    if (!r.complete) {
        out << "incomplete run: resume with the same --checkpoint\n";
        return kExitError;
    }
    return kExitPass;
}

int cmd_oracle(const CliConfig& cfg, std::ostream& out) {
    const std::vector<SetFamily> families = brute_force_enumerate(cfg.constraints());
    out << "count=" << families.size() << '\n';
    if (!cfg.keys.empty()) write_text(cfg.keys, sorted_keys(families));
    return kExitPass;
}

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
    std::vector<SetFamily> families;
    EnumerationOptions options;
    options.workers = cfg.resolved_workers();
    options.order = cfg.search_order();
    options.unbounded = cfg.unbounded;
    options.serialize_visits = true;
    const bool keep = !cfg.keys.empty() || !cfg.output.empty();
    const std::uint64_t count = enumerate_families(
        cfg.constraints(), [&](const SetFamily& f) {
            if (keep) families.push_back(f);
        },
        options);
    out << "count=" << count << '\n';
    if (!cfg.keys.empty()) write_text(cfg.keys, sorted_keys(families));
    if (!cfg.output.empty()) {
        std::vector<std::pair<std::string, const SetFamily*>> order;
        for (const SetFamily& f : families) order.emplace_back(to_string(canonical_key(f)) + "|" + format_family_inline(f), &f);
        std::sort(order.begin(), order.end());
        std::string text;
        for (const auto& [key, f] : order) text += format_family(*f) + "\n";
        write_text(cfg.output, text);
    }
    return kExitPass;
}

void add_search_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--n", cfg.n, "ground-set size")->required();
    cmd->add_option("--t", cfg.t, "minimum size of a nonempty member")->required();
    cmd->add_flag("--up-to-iso", cfg.up_to_iso, "one family per relabeling class");
    cmd->add_flag("--no-universe", cfg.no_universe, "do not require the members to cover M_n");
}

void add_run_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--workers", cfg.workers, "worker threads (default: UCF_WORKERS or all cores)");
    cmd->add_option("--order", cfg.order, "candidate order")->check(CLI::IsMember({"asc", "desc"}));
    cmd->add_flag("--unbounded", cfg.unbounded, "acknowledge runs outside the supported envelope");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Union-closed family toolkit: checks, closure, exhaustive S-Frankl campaigns"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "analyse one family file");
    check->add_option("path", cfg.input, "family file")->required();

    auto* closure = app.add_subcommand("closure", "print the union-closure of a family file");
    closure->add_option("path", cfg.input, "family file")->required();
    closure->add_option("--output", cfg.output, "write here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run an exhaustive campaign");
    add_search_flags(verify, cfg);
    add_run_flags(verify, cfg);
    verify->add_option("--checks", cfg.checks, "frankl, s_frankl, lemma_1_2_spot")->delimiter(',');
    verify->add_option("--checkpoint", cfg.checkpoint, "resumable subtree log");
    verify->add_option("--report", cfg.report, "write the JSON report here");
    verify->add_option("--dump-dir", cfg.dump_dir, "directory for counterexample family files");
    verify->add_option("--lemma-every", cfg.lemma_every, "lemma spot-check sampling modulus")->check(CLI::PositiveNumber);
    verify->add_option("--stop-after", cfg.stop_after, "stop after this many subtrees (split runs)");

    auto* oracle = app.add_subcommand("oracle", "brute-force the same family set");
    add_search_flags(oracle, cfg);
    oracle->add_option("--keys", cfg.keys, "write sorted canonical keys here");

    auto* enumerate = app.add_subcommand("enumerate", "dump the enumerated families");
    add_search_flags(enumerate, cfg);
    add_run_flags(enumerate, cfg);
    enumerate->add_option("--keys", cfg.keys, "write sorted canonical keys here");
    enumerate->add_option("--output", cfg.output, "write the families here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (*check) return cmd_check(cfg, out);
        if (*closure) return cmd_closure(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        if (*oracle) return cmd_oracle(cfg, out);
        if (*enumerate) return cmd_enumerate(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace ucf
