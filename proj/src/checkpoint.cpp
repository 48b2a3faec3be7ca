#include "ucf/checkpoint.hpp"

#include <charconv>
#include <sstream>

#include "ucf/errors.hpp"

namespace ucf {

std::string CheckpointEntry::field(std::string_view key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return {};
}

std::string format_checkpoint_entry(const CheckpointEntry& e) {
    std::string out = "subtree=" + e.subtree + " count=" + std::to_string(e.count);
    for (const auto& [k, v] : e.fields) out += " " + k + "=" + v;
    return out;
}

CheckpointEntry parse_checkpoint_entry(std::string_view line, std::size_t line_no) {
    std::vector<std::pair<std::string, std::string>> tokens;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line_no, "expected key=value, got '" + token + "'");
        tokens.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    if (tokens.size() < 2 || tokens[0].first != "subtree" || tokens[1].first != "count")
        throw ParseError(line_no, "checkpoint lines start with 'subtree=<list> count=<int>'");

    CheckpointEntry e;
    e.subtree = tokens[0].second;
    const std::string& count = tokens[1].second;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), e.count);
    if (ec != std::errc() || ptr != count.data() + count.size())
        throw ParseError(line_no, "count is not a non-negative integer");
    e.fields.assign(tokens.begin() + 2, tokens.end());
    return e;
}

CheckpointFile::CheckpointFile(std::filesystem::path path, std::string header) : path_(std::move(path)) {
    bool fresh = true;
    if (std::ifstream in(path_); in) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1) {
                if (line != header)
                    throw PreconditionViolation("checkpoint " + path_.string() + " belongs to a different run: '" +
                                                line + "'");
                fresh = false;
                continue;
            }
            if (line.empty() || line.front() == '#') continue;
            CheckpointEntry e = parse_checkpoint_entry(line, line_no);
            completed_.insert_or_assign(e.subtree, std::move(e));
        }
    }
    out_.open(path_, std::ios::app);
    if (!out_) throw PreconditionViolation("cannot write checkpoint " + path_.string());
    if (fresh) out_ << header << '\n' << std::flush;
}

void CheckpointFile::record(const CheckpointEntry& e) {
    std::lock_guard lock(mutex_);
    out_ << format_checkpoint_entry(e) << '\n' << std::flush;
    completed_.insert_or_assign(e.subtree, e);
}

} // namespace ucf
