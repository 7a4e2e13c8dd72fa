#include "posvote/io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "posvote/bigint.hpp"
#include "posvote/errors.hpp"

namespace posvote {
namespace {

// --- low-level text helpers --------------------------------------------------

struct Line {
    int no = 0;        // 1-based line number in the source text
    std::string text;  // comment-stripped, right-trimmed, nonempty
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Characters that can appear in a candidate name (everything except
// whitespace and the grammar's punctuation).
bool name_char(char c) {
    if (is_space(c) || c == '\n') return false;
    switch (c) {
        case '>': case '<': case '=': case '{': case '}':
        case ',': case ';': case ':': case '#':
            return false;
        default:
            return true;
    }
}

std::string rtrim(std::string s) {
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

std::string trim(const std::string& s) {
    size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

// Splits the text into nonempty lines, dropping comments ('#' to end of line).
std::vector<Line> logical_lines(const std::string& text) {
    std::vector<Line> out;
    int no = 1;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::string line = text.substr(pos, end - pos);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = rtrim(std::move(line));
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            out.push_back({no, line});
        if (nl == std::string::npos) break;
        pos = nl + 1;
        ++no;
    }
    return out;
}

[[noreturn]] void fail(int line, size_t col, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col + 1) +
                     ": " + msg);
}

// A "key: value" line; rest_pos is the value's offset within the line.
struct Directive {
    std::string key;
    std::string rest;
    size_t rest_pos = 0;
};

Directive split_directive(const Line& ln) {
    size_t colon = ln.text.find(':');
    if (colon == std::string::npos)
        fail(ln.no, ln.text.size(), "expected a 'key: value' line");
    Directive d;
    d.key = trim(ln.text.substr(0, colon));
    if (d.key.empty()) fail(ln.no, 0, "missing key before ':'");
    size_t r = colon + 1;
    while (r < ln.text.size() && is_space(ln.text[r])) ++r;
    d.rest = ln.text.substr(r);
    d.rest_pos = r;
    return d;
}

int resolve_name(const Line& ln, const CandidateSet& cs, const std::string& n, size_t pos) {
    if (n.empty()) fail(ln.no, pos, "empty candidate name");
    if (!cs.contains(n)) fail(ln.no, pos, "unknown candidate '" + n + "'");
    return cs.require(n);
}

long long parse_uint(const Line& ln, const std::string& tok, size_t pos, long long max_value) {
    if (tok.empty()) fail(ln.no, pos, "expected a number");
    long long v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') fail(ln.no, pos, "invalid number '" + tok + "'");
        v = v * 10 + (c - '0');
        if (v > max_value) fail(ln.no, pos, "number out of range: '" + tok + "'");
    }
    return v;
}

Score parse_score(const Line& ln, const std::string& tok, size_t pos) {
    if (tok.empty()) fail(ln.no, pos, "expected a number");
    size_t i = (tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) fail(ln.no, pos, "invalid number '" + tok + "'");
    for (; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9') fail(ln.no, pos, "invalid number '" + tok + "'");
    return Score(tok);
}

// --- vote grammar -------------------------------------------------------------

struct VoteGroup {
    std::vector<std::pair<std::string, size_t>> names;  // name and its column
    bool braced = false;
    size_t pos = 0;  // column of the group start
};

// Parses "a > {b,c} > d" starting at `pos` into ordered groups.
std::vector<VoteGroup> parse_groups(const Line& ln, size_t pos) {
    const std::string& s = ln.text;
    auto skip_ws = [&] { while (pos < s.size() && is_space(s[pos])) ++pos; };
    std::vector<VoteGroup> groups;
    while (true) {
        skip_ws();
        if (pos >= s.size()) {
            if (!groups.empty()) fail(ln.no, pos, "expected a candidate after '>'");
            break;  // empty vote
        }
        VoteGroup g;
        g.pos = pos;
        if (s[pos] == '{') {
            g.braced = true;
            ++pos;
            while (true) {
                skip_ws();
                if (pos >= s.size()) fail(ln.no, pos, "unterminated '{'");
                if (s[pos] == '}') { ++pos; break; }
                if (s[pos] == ',') { ++pos; continue; }
                if (!name_char(s[pos])) fail(ln.no, pos, "unexpected character in braced block");
                size_t start = pos;
                while (pos < s.size() && name_char(s[pos])) ++pos;
                g.names.emplace_back(s.substr(start, pos - start), start);
            }
            if (g.names.empty()) fail(ln.no, g.pos, "empty braced block");
        } else if (name_char(s[pos])) {
            size_t start = pos;
            while (pos < s.size() && name_char(s[pos])) ++pos;
            g.names.emplace_back(s.substr(start, pos - start), start);
        } else {
            fail(ln.no, pos, "expected a candidate name or '{'");
        }
        groups.push_back(std::move(g));
        skip_ws();
        if (pos >= s.size()) break;
        if (s[pos] != '>') fail(ln.no, pos, "expected '>' between groups");
        ++pos;
    }
    return groups;
}

PartialOrder build_vote(const Line& ln, const CandidateSet& cs,
                        const std::vector<VoteGroup>& groups) {
    const int m = cs.size();
    if (groups.empty()) return PartialOrder::empty(m);
    bool partitioned = false;
    for (const VoteGroup& g : groups)
        partitioned = partitioned || g.braced || g.names.size() > 1;
    try {
        if (partitioned) {
            std::vector<std::vector<int>> blocks;
            for (const VoteGroup& g : groups) {
                std::vector<int> block;
                for (const auto& [n, npos] : g.names)
                    block.push_back(resolve_name(ln, cs, n, npos));
                blocks.push_back(std::move(block));
            }
            return PartialOrder::blocks(m, blocks);
        }
        std::vector<int> chain;
        for (const VoteGroup& g : groups)
            chain.push_back(resolve_name(ln, cs, g.names[0].first, g.names[0].second));
        return PartialOrder::chain(m, chain);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(ln.no, groups.front().pos, e.what());
    }
}

PartialOrder parse_vote_pairs(const Line& ln, const CandidateSet& cs, size_t pos) {
    const std::string& s = ln.text;
    auto skip_ws = [&] { while (pos < s.size() && is_space(s[pos])) ++pos; };
    auto read_name = [&]() -> std::pair<std::string, size_t> {
        if (pos >= s.size() || !name_char(s[pos])) fail(ln.no, pos, "expected a candidate name");
        size_t start = pos;
        while (pos < s.size() && name_char(s[pos])) ++pos;
        return {s.substr(start, pos - start), start};
    };
    std::vector<std::pair<int, int>> pairs;
    while (true) {
        skip_ws();
        while (pos < s.size() && s[pos] == ';') { ++pos; skip_ws(); }
        if (pos >= s.size()) break;
        auto [a, apos] = read_name();
        skip_ws();
        if (pos >= s.size() || s[pos] != '>') fail(ln.no, pos, "expected '>' in pair");
        ++pos;
        skip_ws();
        auto [b, bpos] = read_name();
        pairs.emplace_back(resolve_name(ln, cs, a, apos),
                           resolve_name(ln, cs, b, bpos));
        skip_ws();
        if (pos < s.size() && s[pos] != ';') fail(ln.no, pos, "expected ';' between pairs");
    }
    try {
        return PartialOrder::from_pairs(cs.size(), pairs);
    } catch (const Error& e) {
        fail(ln.no, 0, e.what());
    }
}

// --- vote rendering -----------------------------------------------------------

std::string join_names(const CandidateSet& cs, const std::vector<int>& ids,
                       const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += cs.name(ids[i]);
    }
    return out;
}

std::string render_vote_line(const CandidateSet& cs, const PartialOrder& po) {
    if (po.pair_count() == 0) return "vote:";
    if (auto chain = chain_members(po))
        return "vote: " + join_names(cs, *chain, " > ");
    if (auto blocks = partition_blocks(po)) {
        std::string out = "vote: ";
        for (size_t i = 0; i < blocks->size(); ++i) {
            if (i) out += " > ";
            const std::vector<int>& block = (*blocks)[i];
            if (block.size() == 1)
                out += cs.name(block[0]);
            else
                out += "{" + join_names(cs, block, ",") + "}";
        }
        return out;
    }
    // General partial order: emit the transitive reduction as pairs.
    const int m = po.size();
    std::string out = "vote-pairs: ";
    bool first = true;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (!po.above(a, b)) continue;
            bool reducible = false;
            for (int k = 0; k < m && !reducible; ++k)
                reducible = po.above(a, k) && po.above(k, b);
            if (reducible) continue;
            if (!first) out += "; ";
            first = false;
            out += cs.name(a) + ">" + cs.name(b);
        }
    }
    return out;
}

// --- 3DM element tokens ---------------------------------------------------------

std::array<int, 3> parse_triple_tokens(const Line& ln, const std::string& rest,
                                       size_t rest_pos, int q) {
    static const char kCoord[3] = {'x', 'y', 'z'};
    std::array<int, 3> out{};
    size_t pos = 0;
    for (int c = 0; c < 3; ++c) {
        while (pos < rest.size() && is_space(rest[pos])) ++pos;
        size_t start = pos;
        while (pos < rest.size() && !is_space(rest[pos])) ++pos;
        std::string tok = rest.substr(start, pos - start);
        size_t col = rest_pos + start;
        if (tok.empty())
            fail(ln.no, col, "expected three elements 'x<i> y<j> z<k>'");
        if (tok[0] != kCoord[c])
            fail(ln.no, col, std::string("expected a '") + kCoord[c] + "' element, got '" + tok + "'");
        long long idx = parse_uint(ln, tok.substr(1), col + 1, 1000000000LL);
        if (idx < 1 || idx > q)
            fail(ln.no, col, "element index out of range: '" + tok + "'");
        out[(size_t)c] = (int)(idx - 1);
    }
    size_t tail = pos;
    while (tail < rest.size() && is_space(rest[tail])) ++tail;
    if (tail < rest.size())
        fail(ln.no, rest_pos + tail, "expected exactly three elements per triple");
    return out;
}

std::string triple_text(const std::array<int, 3>& t) {
    return "x" + std::to_string(t[0] + 1) + " y" + std::to_string(t[1] + 1) + " z" +
           std::to_string(t[2] + 1);
}

// --- sidecar helpers ------------------------------------------------------------

TotalOrder parse_total_line(const Line& ln, const CandidateSet& cs, size_t pos) {
    auto groups = parse_groups(ln, pos);
    std::vector<int> by_position;
    for (const VoteGroup& g : groups) {
        if (g.braced || g.names.size() != 1)
            fail(ln.no, g.pos, "a completion must be a chain of single candidates");
        by_position.push_back(resolve_name(ln, cs, g.names[0].first, g.names[0].second));
    }
    if ((int)by_position.size() != cs.size())
        fail(ln.no, pos, "a completion must rank every candidate exactly once");
    try {
        return TotalOrder::from_positions(std::move(by_position));
    } catch (const Error& e) {
        fail(ln.no, pos, e.what());
    }
}

// Stores indexed sidecar entries and enforces contiguity 0..t-1.
template <typename T>
std::vector<T> collect_indexed(const std::map<int, T>& entries, size_t expect,
                               const std::string& what) {
    if (entries.size() != expect)
        throw ParseError("expected " + std::to_string(expect) + " '" + what +
                         "' entries, found " + std::to_string(entries.size()));
    std::vector<T> out;
    out.reserve(entries.size());
    int next = 0;
    for (const auto& [idx, value] : entries) {
        if (idx != next)
            throw ParseError("missing '" + what + " " + std::to_string(next) + "' entry");
        out.push_back(value);
        ++next;
    }
    return out;
}

} // namespace

// --- profiles ---------------------------------------------------------------

std::string render_profile(const Profile& p) {
    p.check();
    std::ostringstream os;
    os << "candidates: ";
    const std::vector<std::string>& names = p.candidates.names();
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) os << ",";
        os << names[i];
    }
    os << "\n";
    if (p.rule_spec) os << "rule: " << *p.rule_spec << "\n";
    if (p.distinguished) os << "distinguished: " << p.candidates.name(*p.distinguished) << "\n";
    for (const PartialOrder& v : p.votes)
        os << render_vote_line(p.candidates, v) << "\n";
    return os.str();
}

Profile parse_profile(const std::string& text) {
    Profile p;
    bool have_cands = false;
    auto need_candidates = [&](const Line& ln) {
        if (!have_cands) fail(ln.no, 0, "the 'candidates:' line must come first");
    };
    for (const Line& ln : logical_lines(text)) {
        Directive d = split_directive(ln);
        if (d.key == "candidates") {
            if (have_cands) fail(ln.no, 0, "duplicate 'candidates:' line");
            std::vector<std::string> names;
            size_t pos = 0;
            const std::string& rest = d.rest;
            while (true) {
                size_t comma = rest.find(',', pos);
                size_t end = (comma == std::string::npos) ? rest.size() : comma;
                std::string raw = rest.substr(pos, end - pos);
                std::string name = trim(raw);
                size_t col = d.rest_pos + pos;
                if (name.empty()) fail(ln.no, col, "empty candidate name");
                for (char c : name)
                    if (!name_char(c))
                        fail(ln.no, col, "invalid character in candidate name '" + name + "'");
                names.push_back(std::move(name));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            try {
                p.candidates = CandidateSet::from_names(std::move(names));
            } catch (const Error& e) {
                fail(ln.no, d.rest_pos, e.what());
            }
            have_cands = true;
        } else if (d.key == "rule") {
            if (p.rule_spec) fail(ln.no, 0, "duplicate 'rule:' line");
            if (d.rest.empty()) fail(ln.no, d.rest_pos, "empty rule spec");
            p.rule_spec = d.rest;
        } else if (d.key == "distinguished") {
            if (p.distinguished) fail(ln.no, 0, "duplicate 'distinguished:' line");
            need_candidates(ln);
            p.distinguished = resolve_name(ln, p.candidates, d.rest, d.rest_pos);
        } else if (d.key == "vote") {
            need_candidates(ln);
            p.votes.push_back(build_vote(ln, p.candidates, parse_groups(ln, d.rest_pos)));
        } else if (d.key == "vote-pairs") {
            need_candidates(ln);
            p.votes.push_back(parse_vote_pairs(ln, p.candidates, d.rest_pos));
        } else {
            fail(ln.no, 0, "unknown directive '" + d.key + "'");
        }
    }
    if (!have_cands) throw ParseError("missing 'candidates:' line");
    p.check();
    return p;
}

// --- 3DM instances ------------------------------------------------------------

std::string render_3dm(const ThreeDMInstance& inst) {
    inst.check();
    std::ostringstream os;
    os << "q: " << inst.q << "\n";
    for (const std::array<int, 3>& t : inst.triples)
        os << "triple: " << triple_text(t) << "\n";
    return os.str();
}

ThreeDMInstance parse_3dm(const std::string& text) {
    ThreeDMInstance inst;
    bool have_q = false;
    std::set<std::array<int, 3>> seen;
    for (const Line& ln : logical_lines(text)) {
        Directive d = split_directive(ln);
        if (d.key == "q") {
            if (have_q) fail(ln.no, 0, "duplicate 'q:' line");
            long long q = parse_uint(ln, d.rest, d.rest_pos, 1000000000LL);
            if (q < 1) fail(ln.no, d.rest_pos, "q must be at least 1");
            inst.q = (int)q;
            have_q = true;
        } else if (d.key == "triple") {
            if (!have_q) fail(ln.no, 0, "the 'q:' line must come before triples");
            std::array<int, 3> t = parse_triple_tokens(ln, d.rest, d.rest_pos, inst.q);
            if (seen.insert(t).second)  // duplicates collapse to one occurrence
                inst.triples.push_back(t);
        } else {
            fail(ln.no, 0, "unknown directive '" + d.key + "'");
        }
    }
    if (!have_q) throw ParseError("missing 'q:' line");
    inst.check();
    return inst;
}

// --- reduction sidecars ---------------------------------------------------------

std::string render_reduction_meta(const ReductionOutput& out) {
    const CandidateSet& cs = out.profile.candidates;
    const int m = cs.size();
    if ((int)out.yes_totals.size() != m)
        throw InvalidArgument("reduction output is missing its expected totals");
    std::ostringstream os;
    os << "variant: " << out.variant << "\n";
    os << "rule: " << out.rule_spec << "\n";
    os << "semantics: " << (out.semantics == Semantics::Unique ? "unique" : "cowinner") << "\n";
    os << "candidate-c: " << cs.name(out.candidate_c) << "\n";
    os << "candidate-w: " << cs.name(out.candidate_w) << "\n";
    os << "lambda: " << out.lambda << "\n";
    os << "adjustment-votes: " << out.adjustment_votes << "\n";
    os << "vector:";
    for (const Score& v : out.vector.values()) os << " " << v;
    os << "\n";
    os << "q: " << out.source.q << "\n";
    for (int i = 0; i < out.source.size(); ++i)
        os << "triple " << i << ": " << triple_text(out.source.triples[(size_t)i]) << "\n";
    for (size_t i = 0; i < out.triple_votes.size(); ++i)
        os << "triple-vote " << i << ": " << out.triple_votes[i] << "\n";
    for (size_t i = 0; i < out.signals.size(); ++i) {
        const VoteSignal& sig = out.signals[i];
        os << "signal " << i << ": " << cs.name(sig.candidate)
           << (sig.selected_if_below ? " < " : " >= ") << sig.threshold << "\n";
    }
    for (size_t i = 0; i < out.completion_out.size(); ++i)
        os << "completion-out " << i << ": "
           << join_names(cs, out.completion_out[i].by_position, " > ") << "\n";
    for (size_t i = 0; i < out.completion_in.size(); ++i)
        os << "completion-in " << i << ": "
           << join_names(cs, out.completion_in[i].by_position, " > ") << "\n";
    for (int v = 0; v < m; ++v)
        os << "target " << cs.name(v) << ": " << out.yes_totals[(size_t)v] << "\n";
    return os.str();
}

ReductionOutput parse_reduction_meta(const std::string& profile_text,
                                     const std::string& meta_text) {
    ReductionOutput out;
    out.profile = parse_profile(profile_text);
    const CandidateSet& cs = out.profile.candidates;
    const int m = cs.size();

    std::optional<std::string> variant, rule, semantics;
    std::optional<int> cand_c, cand_w, q;
    std::optional<Score> lambda;
    std::optional<std::uint64_t> adjustment;
    std::optional<std::vector<Score>> vec;
    std::map<int, std::array<int, 3>> triples;
    std::map<int, int> triple_votes;
    std::map<int, VoteSignal> signals;
    std::map<int, TotalOrder> comp_out;
    std::map<int, TotalOrder> comp_in;
    std::map<int, Score> targets;

    auto no_dup = [](const Line& ln, bool present, const std::string& key) {
        if (present) fail(ln.no, 0, "duplicate '" + key + ":' line");
    };

    for (const Line& ln : logical_lines(meta_text)) {
        Directive d = split_directive(ln);
        size_t sp = d.key.find(' ');
        std::string head = (sp == std::string::npos) ? d.key : trim(d.key.substr(0, sp));
        std::string arg = (sp == std::string::npos) ? std::string() : trim(d.key.substr(sp + 1));
        auto indexed = [&]() -> int {
            return (int)parse_uint(ln, arg, 0, 1000000000LL);
        };
        if (head == "variant") {
            no_dup(ln, variant.has_value(), head);
            if (d.rest.empty()) fail(ln.no, d.rest_pos, "empty variant");
            variant = d.rest;
        } else if (head == "rule") {
            no_dup(ln, rule.has_value(), head);
            if (d.rest.empty()) fail(ln.no, d.rest_pos, "empty rule spec");
            rule = d.rest;
        } else if (head == "semantics") {
            no_dup(ln, semantics.has_value(), head);
            if (d.rest != "cowinner" && d.rest != "unique")
                fail(ln.no, d.rest_pos, "semantics must be 'cowinner' or 'unique'");
            semantics = d.rest;
        } else if (head == "candidate-c") {
            no_dup(ln, cand_c.has_value(), head);
            cand_c = resolve_name(ln, cs, d.rest, d.rest_pos);
        } else if (head == "candidate-w") {
            no_dup(ln, cand_w.has_value(), head);
            cand_w = resolve_name(ln, cs, d.rest, d.rest_pos);
        } else if (head == "lambda") {
            no_dup(ln, lambda.has_value(), head);
            lambda = parse_score(ln, d.rest, d.rest_pos);
        } else if (head == "adjustment-votes") {
            no_dup(ln, adjustment.has_value(), head);
            adjustment = (std::uint64_t)parse_uint(ln, d.rest, d.rest_pos,
                                                   (long long)1 << 62);
        } else if (head == "vector") {
            no_dup(ln, vec.has_value(), head);
            std::vector<Score> values;
            size_t pos = 0;
            while (pos < d.rest.size()) {
                while (pos < d.rest.size() && is_space(d.rest[pos])) ++pos;
                if (pos >= d.rest.size()) break;
                size_t start = pos;
                while (pos < d.rest.size() && !is_space(d.rest[pos])) ++pos;
                values.push_back(parse_score(ln, d.rest.substr(start, pos - start),
                                             d.rest_pos + start));
            }
            if (values.empty()) fail(ln.no, d.rest_pos, "empty scoring vector");
            vec = std::move(values);
        } else if (head == "q") {
            no_dup(ln, q.has_value(), head);
            long long v = parse_uint(ln, d.rest, d.rest_pos, 1000000000LL);
            if (v < 1) fail(ln.no, d.rest_pos, "q must be at least 1");
            q = (int)v;
        } else if (head == "triple") {
            if (!q) fail(ln.no, 0, "the 'q:' line must come before triples");
            int i = indexed();
            if (triples.count(i)) fail(ln.no, 0, "duplicate 'triple " + arg + ":' line");
            triples[i] = parse_triple_tokens(ln, d.rest, d.rest_pos, *q);
        } else if (head == "triple-vote") {
            int i = indexed();
            if (triple_votes.count(i)) fail(ln.no, 0, "duplicate 'triple-vote " + arg + ":' line");
            long long vi = parse_uint(ln, d.rest, d.rest_pos, 1000000000LL);
            if (vi >= out.profile.num_votes())
                fail(ln.no, d.rest_pos, "vote index out of range: '" + d.rest + "'");
            triple_votes[i] = (int)vi;
        } else if (head == "signal") {
            int i = indexed();
            if (signals.count(i)) fail(ln.no, 0, "duplicate 'signal " + arg + ":' line");
            const std::string& s = ln.text;
            size_t pos = d.rest_pos;
            auto skip_ws = [&] { while (pos < s.size() && is_space(s[pos])) ++pos; };
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && name_char(s[pos])) ++pos;
            VoteSignal sig;
            sig.candidate = resolve_name(ln, cs, s.substr(start, pos - start), start);
            skip_ws();
            if (pos < s.size() && s[pos] == '<') {
                sig.selected_if_below = true;
                ++pos;
            } else if (pos + 1 < s.size() && s[pos] == '>' && s[pos + 1] == '=') {
                sig.selected_if_below = false;
                pos += 2;
            } else {
                fail(ln.no, pos, "expected '<' or '>=' in signal");
            }
            skip_ws();
            start = pos;
            while (pos < s.size() && !is_space(s[pos])) ++pos;
            sig.threshold = parse_score(ln, s.substr(start, pos - start), start);
            skip_ws();
            if (pos < s.size()) fail(ln.no, pos, "trailing text after signal");
            signals[i] = sig;
        } else if (head == "completion-out") {
            int i = indexed();
            if (comp_out.count(i))
                fail(ln.no, 0, "duplicate 'completion-out " + arg + ":' line");
            comp_out.emplace(i, parse_total_line(ln, cs, d.rest_pos));
        } else if (head == "completion-in") {
            int i = indexed();
            if (comp_in.count(i)) fail(ln.no, 0, "duplicate 'completion-in " + arg + ":' line");
            comp_in.emplace(i, parse_total_line(ln, cs, d.rest_pos));
        } else if (head == "target") {
            int id = resolve_name(ln, cs, arg, 0);
            if (targets.count(id)) fail(ln.no, 0, "duplicate 'target " + arg + ":' line");
            targets[id] = parse_score(ln, d.rest, d.rest_pos);
        } else {
            fail(ln.no, 0, "unknown directive '" + d.key + "'");
        }
    }

    auto need = [&](bool present, const std::string& key) {
        if (!present) throw ParseError("missing '" + key + ":' line in reduction metadata");
    };
    need(variant.has_value(), "variant");
    need(rule.has_value(), "rule");
    need(semantics.has_value(), "semantics");
    need(cand_c.has_value(), "candidate-c");
    need(cand_w.has_value(), "candidate-w");
    need(lambda.has_value(), "lambda");
    need(adjustment.has_value(), "adjustment-votes");
    need(vec.has_value(), "vector");
    need(q.has_value(), "q");

    out.variant = *variant;
    out.rule_spec = *rule;
    out.semantics = (*semantics == "unique") ? Semantics::Unique : Semantics::Cowinner;
    out.candidate_c = *cand_c;
    out.candidate_w = *cand_w;
    out.lambda = *lambda;
    out.adjustment_votes = *adjustment;

    if ((int)vec->size() != m)
        throw ParseError("scoring vector has " + std::to_string(vec->size()) +
                         " entries for " + std::to_string(m) + " candidates");
    try {
        out.vector = ScoringVector(*vec);
    } catch (const Error& e) {
        throw ParseError(std::string("invalid scoring vector: ") + e.what());
    }

    out.source.q = *q;
    size_t t = triples.size();
    out.source.triples = collect_indexed(triples, t, "triple");
    try {
        out.source.check();
    } catch (const Error& e) {
        throw ParseError(std::string("invalid source instance: ") + e.what());
    }
    out.triple_votes = collect_indexed(triple_votes, t, "triple-vote");
    out.signals = collect_indexed(signals, t, "signal");
    out.completion_out = collect_indexed(comp_out, t, "completion-out");
    out.completion_in = collect_indexed(comp_in, t, "completion-in");

    if (targets.size() != (size_t)m)
        throw ParseError("expected one 'target' entry per candidate");
    out.yes_totals.resize((size_t)m);
    for (const auto& [id, score] : targets) out.yes_totals[(size_t)id] = score;

    if ((std::uint64_t)out.profile.num_votes() != t + out.adjustment_votes)
        throw ParseError("profile has " + std::to_string(out.profile.num_votes()) +
                         " votes but the metadata describes " + std::to_string(t) +
                         " triple votes plus " + std::to_string(out.adjustment_votes) +
                         " adjustment votes");
    if (!out.profile.distinguished)
        out.profile.distinguished = out.candidate_c;
    else if (*out.profile.distinguished != out.candidate_c)
        throw ParseError("the profile's distinguished candidate does not match candidate-c");
    if (!out.profile.rule_spec)
        out.profile.rule_spec = out.rule_spec;
    return out;
}

// --- completion documents --------------------------------------------------------

std::string render_completion(const CandidateSet& candidates,
                              const std::vector<TotalOrder>& votes) {
    Profile p;
    p.candidates = candidates;
    for (const TotalOrder& v : votes) p.votes.push_back(v.as_partial());
    return render_profile(p);
}

std::pair<CandidateSet, std::vector<TotalOrder>> parse_completion(const std::string& text) {
    Profile p = parse_profile(text);
    std::vector<TotalOrder> votes;
    votes.reserve(p.votes.size());
    for (size_t i = 0; i < p.votes.size(); ++i) {
        if (!p.votes[i].is_total())
            throw ParseError("vote " + std::to_string(i + 1) +
                             " is not a total order over all candidates");
        votes.push_back(p.votes[i].as_total());
    }
    return {p.candidates, std::move(votes)};
}

} // namespace posvote
