#include "posvote/rules.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <sstream>

namespace posvote {

namespace {

Score vec_gcd(const std::vector<Score>& v) {
    Score g = 0;
    for (const Score& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

void require_normalised(const std::vector<Score>& s) {
    if (s.size() < 2)
        throw InvalidArgument("scoring vector needs at least two positions");
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] < s[i + 1])
            throw InvalidArgument("scoring vector must be non-increasing");
    if (s.back() != 0)
        throw InvalidArgument("scoring vector must end in 0");
    if (s.front() == 0)
        throw InvalidArgument("scoring vector must not be constant");
    if (vec_gcd(s) != 1)
        throw InvalidArgument("scoring vector entries must have gcd 1");
}

} // namespace

ScoringVector::ScoringVector(std::vector<Score> values) : s_(std::move(values)) {
    require_normalised(s_);
}

int ScoringVector::distinct_count() const {
    int d = 1;
    for (size_t i = 1; i < s_.size(); ++i)
        if (s_[i] != s_[i - 1]) ++d;
    return d;
}

std::vector<std::pair<Score, int>> ScoringVector::block_layout() const {
    std::vector<std::pair<Score, int>> out;
    for (const Score& v : s_) {
        if (!out.empty() && out.back().first == v)
            out.back().second++;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

ScoringVector normalise(const std::vector<Score>& raw) {
    if (raw.size() < 2)
        throw InvalidArgument("scoring vector needs at least two positions");
    for (size_t i = 0; i + 1 < raw.size(); ++i)
        if (raw[i] < raw[i + 1])
            throw InvalidArgument("scoring vector must be non-increasing");
    if (raw.front() == raw.back())
        throw InvalidArgument("scoring vector must not be constant");
    std::vector<Score> s(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) s[i] = raw[i] - raw.back();
    Score g = vec_gcd(s);
    for (Score& x : s) x /= g;
    return ScoringVector(std::move(s));
}

bool is_plurality_vector(const ScoringVector& s) {
    if (s.at(0) != 1) return false;
    for (int i = 1; i < s.size(); ++i)
        if (s.at(i) != 0) return false;
    return true;
}

bool is_veto_vector(const ScoringVector& s) {
    for (int i = 0; i + 1 < s.size(); ++i)
        if (s.at(i) != 1) return false;
    return s.at(s.size() - 1) == 0;
}

PwComplexity pw_complexity(const ScoringRule& rule) {
    // Plurality and veto admit polynomial possible-winner algorithms; every
    // other pure rule falls in the hard class.  A family counts as plurality
    // (or veto) only if its vector has that shape at every candidate count.
    bool all_plu = true, all_veto = true;
    int lo = std::max(2, rule.min_m);
    for (int m = lo; m <= lo + 10; ++m) {
        ScoringVector v = rule.vector(m);
        all_plu = all_plu && is_plurality_vector(v);
        all_veto = all_veto && is_veto_vector(v);
    }
    return (all_plu || all_veto) ? PwComplexity::Polynomial : PwComplexity::NpHard;
}

ScoringRule make_plurality() {
    ScoringRule r;
    r.name = "plurality";
    r.min_m = 2;
    r.vector_fn = [](int m) {
        std::vector<Score> s((size_t)m, 0);
        s[0] = 1;
        return ScoringVector(std::move(s));
    };
    r.declared_class = TwoValued{};
    r.block_layout_fn = [](int m) {
        return std::vector<std::pair<Score, int>>{{1, 1}, {0, m - 1}};
    };
    return r;
}

ScoringRule make_veto() {
    ScoringRule r;
    r.name = "veto";
    r.min_m = 2;
    r.vector_fn = [](int m) {
        std::vector<Score> s((size_t)m, 1);
        s[(size_t)m - 1] = 0;
        return ScoringVector(std::move(s));
    };
    r.declared_class = TwoValued{};
    r.block_layout_fn = [](int m) {
        return std::vector<std::pair<Score, int>>{{1, m - 1}, {0, 1}};
    };
    return r;
}

ScoringRule make_t_approval(int t) {
    if (t < 1) throw InvalidArgument("approval(t) needs t >= 1");
    ScoringRule r;
    r.name = "approval(" + std::to_string(t) + ")";
    r.min_m = 2;
    r.vector_fn = [t](int m) {
        int ones = std::min(t, m - 1);
        std::vector<Score> s((size_t)m, 0);
        for (int i = 0; i < ones; ++i) s[(size_t)i] = 1;
        return ScoringVector(std::move(s));
    };
    r.declared_class = TwoValued{};
    r.block_layout_fn = [t](int m) {
        int ones = std::min(t, m - 1);
        return std::vector<std::pair<Score, int>>{{1, ones}, {0, m - ones}};
    };
    return r;
}

ScoringRule make_borda() {
    ScoringRule r;
    r.name = "borda";
    r.min_m = 2;
    r.vector_fn = [](int m) {
        std::vector<Score> s((size_t)m);
        for (int i = 0; i < m; ++i) s[(size_t)i] = m - 1 - i;
        return ScoringVector(std::move(s));
    };
    r.declared_class = Unbounded{};
    r.growth_poly = [](int u) { return 3 * u + 4; };
    return r;
}

ScoringRule make_rfl(int f, int l) {
    if (f < 1 || l < 1) throw InvalidArgument("r(f,l) needs f >= 1 and l >= 1");
    ScoringRule r;
    r.name = "r(" + std::to_string(f) + "," + std::to_string(l) + ")";
    r.min_m = f + l + 1;
    r.vector_fn = [f, l](int m) {
        std::vector<Score> s((size_t)m, 1);
        for (int i = 0; i < f; ++i) s[(size_t)i] = 2;
        for (int i = m - l; i < m; ++i) s[(size_t)i] = 0;
        return ScoringVector(std::move(s));
    };
    r.declared_class = PValued{3};
    r.block_layout_fn = [f, l](int m) {
        return std::vector<std::pair<Score, int>>{{2, f}, {1, m - f - l}, {0, l}};
    };
    return r;
}

ScoringRule make_alternating() {
    ScoringRule r;
    r.name = "alternating";
    r.min_m = 2;
    r.vector_fn = [](int m) {
        int ones = (m + 1) / 2;
        std::vector<Score> s((size_t)m, 0);
        for (int i = 0; i < ones; ++i) s[(size_t)i] = 1;
        return ScoringVector(std::move(s));
    };
    r.declared_class = TwoValued{};
    r.block_layout_fn = [](int m) {
        int ones = (m + 1) / 2;
        return std::vector<std::pair<Score, int>>{{1, ones}, {0, m - ones}};
    };
    return r;
}

ScoringRule make_lexicographic() {
    ScoringRule r;
    r.name = "lexicographic";
    r.min_m = 2;
    r.vector_fn = [](int m) {
        // Normalised form of (2^(m-1), ..., 2, 1): entry i is 2^(m-1-i) - 1.
        std::vector<Score> s((size_t)m);
        for (int i = 0; i < m; ++i) {
            Score v = 1;
            v <<= (m - 1 - i);
            s[(size_t)i] = v - 1;
        }
        return ScoringVector(std::move(s));
    };
    r.declared_class = Unbounded{};
    r.growth_poly = [](int u) { return 3 * u + 4; };
    return r;
}

std::vector<ScoringRule> builtin_rules() {
    return {make_plurality(), make_veto(),          make_t_approval(2), make_borda(),
            make_rfl(1, 1),   make_alternating(),  make_lexicographic()};
}

namespace {

std::string strip(const std::string& in) {
    std::string out;
    for (char c : in)
        if (!std::isspace((unsigned char)c)) out += (char)std::tolower((unsigned char)c);
    return out;
}

std::vector<long long> parse_int_args(const std::string& spec, size_t open) {
    if (spec.back() != ')') throw ParseError("bad rule spec: " + spec);
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    std::vector<long long> out;
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ParseError("bad rule spec: " + spec);
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "' in rule spec");
        }
        if (pos != tok.size()) throw ParseError("bad integer '" + tok + "' in rule spec");
        out.push_back(v);
    }
    if (out.empty()) throw ParseError("bad rule spec: " + spec);
    return out;
}

} // namespace

ScoringRule parse_rule(const std::string& raw) {
    std::string spec = strip(raw);
    if (spec == "plurality") return make_plurality();
    if (spec == "veto") return make_veto();
    if (spec == "borda") return make_borda();
    if (spec == "alternating") return make_alternating();
    if (spec == "lexicographic" || spec == "lex") return make_lexicographic();
    size_t open = spec.find('(');
    if (open != std::string::npos) {
        std::string head = spec.substr(0, open);
        std::vector<long long> args = parse_int_args(spec, open);
        if (head == "approval") {
            if (args.size() != 1) throw ParseError("approval(t) takes one argument");
            return make_t_approval((int)args[0]);
        }
        if (head == "r") {
            if (args.size() != 2) throw ParseError("r(f,l) takes two arguments");
            return make_rfl((int)args[0], (int)args[1]);
        }
        if (head == "vector") {
            std::vector<Score> vals(args.begin(), args.end());
            ScoringVector v = normalise(vals);
            ScoringRule r;
            r.name = spec;
            r.min_m = v.size();
            int m_fixed = v.size();
            r.vector_fn = [v, m_fixed](int m) {
                if (m != m_fixed)
                    throw InvalidArgument("explicit vector rule is only defined for m=" +
                                          std::to_string(m_fixed));
                return v;
            };
            int d = v.distinct_count();
            if (d == 2)
                r.declared_class = TwoValued{};
            else
                r.declared_class = PValued{d};
            return r;
        }
    }
    throw ParseError("unknown rule spec: " + raw);
}

namespace {

// True when `big` can be obtained from `small` by inserting a single value.
bool one_insertion_apart(const std::vector<Score>& small, const std::vector<Score>& big) {
    if (big.size() != small.size() + 1) return false;
    size_t i = 0;
    while (i < small.size() && small[i] == big[i]) ++i;
    for (size_t k = i; k < small.size(); ++k)
        if (small[k] != big[k + 1]) return false;
    return true;
}

} // namespace

RuleCheck check_rule(const ScoringRule& rule, int horizon) {
    RuleCheck out;
    auto fail = [&out](bool& flag, const std::string& msg) {
        flag = false;
        if (out.detail.empty()) out.detail = msg;
    };
    int lo = std::max(2, rule.min_m);
    std::vector<Score> prev;
    int prev_distinct = 0;
    int max_distinct = 0;
    for (int m = lo; m <= horizon; ++m) {
        ScoringVector v = [&]() -> ScoringVector {
            try {
                return rule.vector(m);
            } catch (const Error& e) {
                fail(out.vectors_valid, "m=" + std::to_string(m) + ": " + e.what());
                return ScoringVector(std::vector<Score>{1, 0});
            }
        }();
        if (!out.vectors_valid) return out;
        if (v.size() != m)
            fail(out.vectors_valid, "m=" + std::to_string(m) + ": wrong vector length");
        if (!prev.empty() && !one_insertion_apart(prev, v.values()))
            fail(out.pure, "m=" + std::to_string(m) + ": not an insertion of the previous vector");
        int d = v.distinct_count();
        if (d < prev_distinct)
            fail(out.class_consistent, "m=" + std::to_string(m) + ": distinct value count dropped");
        max_distinct = std::max(max_distinct, d);
        if (rule.block_layout_fn) {
            std::vector<Score> expanded;
            for (auto& [val, len] : rule.block_layout_fn(m))
                for (int k = 0; k < len; ++k) expanded.push_back(val);
            if (expanded != v.values())
                fail(out.layout_consistent,
                     "m=" + std::to_string(m) + ": block layout does not expand to the vector");
        }
        prev = v.values();
        prev_distinct = d;
    }
    if (std::holds_alternative<TwoValued>(rule.declared_class)) {
        if (max_distinct != 2)
            fail(out.class_consistent, "declared 2-valued but saw " +
                                           std::to_string(max_distinct) + " distinct values");
    } else if (auto* pv = std::get_if<PValued>(&rule.declared_class)) {
        if (max_distinct > pv->p || (horizon >= lo + 2 && max_distinct < pv->p))
            fail(out.class_consistent, "declared " + std::to_string(pv->p) + "-valued but saw " +
                                           std::to_string(max_distinct) + " distinct values");
    } else {
        // Unbounded: the distinct count must still be growing near the horizon.
        int tail_lo = std::max(lo, horizon - 8);
        if (horizon > lo + 8 &&
            rule.vector(horizon).distinct_count() <= rule.vector(tail_lo).distinct_count())
            fail(out.class_consistent, "declared unbounded but the distinct value count stalled");
    }
    return out;
}

} // namespace posvote
