#include "metascen/notation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace metascen::notation {

namespace {

enum class token_kind {
    node,      // one of I P S O F E
    arrow,     // -> or U+2192
    biarrow,   // <-> , U+2194, U+21CC
    broken,    // U+2297 (circled times)
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    lparen,
    rparen,
    comma,
    plus,
    word,
    number,
    unknown,
};

struct token {
    token_kind kind;
    std::size_t offset;
    std::size_t length;
    std::string text;
};

bool starts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
    return text.substr(pos, prefix.size()) == prefix;
}

std::optional<node> node_from_letter(char c) {
    switch (c) {
        case 'I': return node::input;
        case 'P': return node::processes;
        case 'S': return node::structures;
        case 'O': return node::output;
        case 'F': return node::feedback;
        case 'E': return node::environment;
        default: return std::nullopt;
    }
}

std::vector<token> tokenize(std::string_view text) {
    std::vector<token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        auto emit = [&](token_kind kind, std::size_t len) {
            out.push_back({kind, i, len, std::string(text.substr(i, len))});
            i += len;
        };
        if (starts_with(text, i, "<->")) {
            emit(token_kind::biarrow, 3);
            continue;
        }
        if (starts_with(text, i, "->")) {
            emit(token_kind::arrow, 2);
            continue;
        }
        if (starts_with(text, i, "→")) {  // →
            emit(token_kind::arrow, 3);
            continue;
        }
        if (starts_with(text, i, "↔") || starts_with(text, i, "⇌")) {  // ↔ ⇌
            emit(token_kind::biarrow, 3);
            continue;
        }
        if (starts_with(text, i, "⊗")) {  // ⊗
            emit(token_kind::broken, 3);
            continue;
        }
        switch (c) {
            case '[': emit(token_kind::lbracket, 1); continue;
            case ']': emit(token_kind::rbracket, 1); continue;
            case '{': emit(token_kind::lbrace, 1); continue;
            case '}': emit(token_kind::rbrace, 1); continue;
            case '(': emit(token_kind::lparen, 1); continue;
            case ')': emit(token_kind::rparen, 1); continue;
            case ',': emit(token_kind::comma, 1); continue;
            case '+': emit(token_kind::plus, 1); continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
            emit(token_kind::number, len);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < text.size() && std::isalpha(static_cast<unsigned char>(text[i + len]))) ++len;
            if (len == 1 && node_from_letter(c)) {
                emit(token_kind::node, 1);
            } else {
                emit(token_kind::word, len);
            }
            continue;
        }
        emit(token_kind::unknown, 1);
    }
    return out;
}

// One comma/plus separated segment of the input. Bracket characters are
// decoration marking the internal cluster; they are stripped here but the
// containment flag is kept so bare node sets inside brackets can be read as
// entry patterns (Appendix-style layouts put them there in either order).
struct clause {
    std::vector<token> tokens;
    bool from_plus = false;     // introduced by '+'
    bool in_bracket = false;    // any token sat inside [...]
    bool parenthesized = false; // a (...) annotation group
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct node_set {
    std::vector<node> nodes;
    std::size_t offset = 0;
    std::size_t length = 0;
};

class parser {
public:
    explicit parser(std::string_view text) : text_(text) {}

    parse_result run() {
        segment(tokenize(text_));
        for (const clause& cl : clauses_) interpret(cl);
        return finish();
    }

private:
    static constexpr std::size_t max_diagnostics = 100;

    void diag(severity level, diagnostic_code code, std::size_t offset, std::size_t length,
              std::string message) {
        if (result_.diagnostics.size() >= max_diagnostics) {
            if (result_.diagnostics.size() == max_diagnostics) {
                result_.diagnostics.push_back({0, text_.size(), severity::error,
                                               diagnostic_code::too_many_errors, "too many errors"});
            }
            return;
        }
        result_.diagnostics.push_back({offset, length, level, code, std::move(message)});
    }

    void error_whole_input(diagnostic_code code, std::string message) {
        diag(severity::error, code, 0, text_.size(), std::move(message));
    }

    void segment(const std::vector<token>& tokens) {
        clause current;
        bool in_bracket = false;
        int brace_depth = 0;
        auto flush = [&](bool next_from_plus) {
            if (!current.tokens.empty()) {
                current.offset = current.tokens.front().offset;
                const token& last = current.tokens.back();
                current.length = last.offset + last.length - current.offset;
                clauses_.push_back(current);
            }
            current = clause{};
            current.from_plus = next_from_plus;
        };
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const token& t = tokens[i];
            switch (t.kind) {
                case token_kind::lbracket:
                    in_bracket = true;
                    continue;
                case token_kind::rbracket:
                    in_bracket = false;
                    continue;
                case token_kind::lbrace:
                    ++brace_depth;
                    break;
                case token_kind::rbrace:
                    if (brace_depth > 0) --brace_depth;
                    break;
                case token_kind::comma:
                    if (brace_depth == 0) {
                        flush(false);
                        continue;
                    }
                    break;
                case token_kind::plus:
                    flush(true);
                    continue;
                case token_kind::lparen: {
                    flush(false);
                    clause group;
                    group.parenthesized = true;
                    std::size_t j = i + 1;
                    for (; j < tokens.size() && tokens[j].kind != token_kind::rparen; ++j) {
                        group.tokens.push_back(tokens[j]);
                    }
                    group.offset = t.offset;
                    group.length = (j < tokens.size() ? tokens[j].offset + tokens[j].length
                                                      : text_.size()) -
                                   t.offset;
                    clauses_.push_back(group);
                    i = j;  // skip to ')'
                    continue;
                }
                default:
                    break;
            }
            current.in_bracket = current.in_bracket || in_bracket;
            current.tokens.push_back(t);
        }
        flush(false);
    }

    // Reads a node or braced node set at position i; advances i past it.
    std::optional<node_set> read_node_set(const std::vector<token>& ts, std::size_t& i) {
        if (i >= ts.size()) return std::nullopt;
        node_set out;
        if (ts[i].kind == token_kind::node) {
            out.nodes.push_back(*node_from_letter(ts[i].text[0]));
            out.offset = ts[i].offset;
            out.length = ts[i].length;
            ++i;
            return out;
        }
        if (ts[i].kind == token_kind::lbrace) {
            out.offset = ts[i].offset;
            ++i;
            while (i < ts.size() && ts[i].kind != token_kind::rbrace) {
                if (ts[i].kind == token_kind::node) {
                    out.nodes.push_back(*node_from_letter(ts[i].text[0]));
                } else if (ts[i].kind != token_kind::comma) {
                    diag(severity::error, diagnostic_code::unknown_token, ts[i].offset, ts[i].length,
                         "unexpected token '" + ts[i].text + "' inside node set");
                }
                ++i;
            }
            std::size_t end = out.offset + 1;
            if (i < ts.size()) {
                end = ts[i].offset + ts[i].length;
                ++i;  // consume '}'
            }
            out.length = end - out.offset;
            if (out.nodes.empty()) {
                diag(severity::error, diagnostic_code::unknown_token, out.offset, out.length,
                     "empty node set");
                return std::nullopt;
            }
            return out;
        }
        return std::nullopt;
    }

    void interpret(const clause& cl) {
        if (cl.tokens.empty()) return;
        const token& first = cl.tokens.front();
        if (first.kind == token_kind::word || cl.parenthesized) {
            // Word-initial or parenthesized groups are annotations; only the
            // "Topology N" form carries meaning.
            if (!try_topology(cl)) {
                diag(severity::warning, diagnostic_code::unknown_annotation, cl.offset, cl.length,
                     "ignoring annotation '" + std::string(text_.substr(cl.offset, cl.length)) +
                         "'");
            }
            return;
        }
        if (first.kind == token_kind::node || first.kind == token_kind::lbrace) {
            interpret_path(cl);
            return;
        }
        diag(severity::error, diagnostic_code::unknown_token, first.offset, first.length,
             "unexpected token '" + first.text + "'");
    }

    bool try_topology(const clause& cl) {
        if (cl.tokens.empty() || cl.tokens.front().kind != token_kind::word) return false;
        std::string lowered = cl.tokens.front().text;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lowered != "topology" || cl.tokens.size() < 2 ||
            cl.tokens[1].kind != token_kind::number) {
            return false;
        }
        const std::string& digits = cl.tokens[1].text;
        const int id = digits.size() == 1 ? digits[0] - '0' : -1;
        if (id < 1 || id > topology_count) {
            diag(severity::error, diagnostic_code::topology_out_of_range, cl.tokens[1].offset,
                 cl.tokens[1].length, "topology id out of range 1..8");
            return true;
        }
        topology_token_ = id;
        topology_token_offset_ = cl.offset;
        topology_token_length_ = cl.length;
        return true;
    }

    void interpret_path(const clause& cl) {
        const std::vector<token>& ts = cl.tokens;
        std::size_t i = 0;
        std::optional<node_set> lhs = read_node_set(ts, i);
        if (!lhs) {
            diag(severity::error, diagnostic_code::unknown_token, ts[0].offset, ts[0].length,
                 "expected a node or node set");
            return;
        }
        if (i == ts.size()) {
            // Bare node set. Inside brackets this names the entry pattern
            // (some catalog rows put the entry set after the arrangement).
            if (cl.in_bracket) {
                add_entry(*lhs);
            } else {
                diag(severity::error, diagnostic_code::unknown_token, lhs->offset, lhs->length,
                     "node set without a connection");
            }
            return;
        }
        while (i < ts.size()) {
            const token& op = ts[i];
            if (op.kind != token_kind::arrow && op.kind != token_kind::biarrow &&
                op.kind != token_kind::broken) {
                diag(severity::error, diagnostic_code::unknown_token, op.offset, op.length,
                     "expected an arrow, found '" + op.text + "'");
                return;
            }
            ++i;
            std::optional<node_set> rhs = read_node_set(ts, i);
            if (!rhs) {
                diag(severity::error, diagnostic_code::unknown_token, op.offset, op.length,
                     "arrow without a target");
                return;
            }
            interpret_hop(*lhs, op, *rhs, cl);
            lhs = rhs;
        }
    }

    static bool is_singleton(const node_set& s, node n) {
        return s.nodes.size() == 1 && s.nodes[0] == n;
    }

    static bool all_internal(const node_set& s) {
        return std::all_of(s.nodes.begin(), s.nodes.end(), [](node n) {
            return n == node::processes || n == node::structures;
        });
    }

    void add_entry(const node_set& targets) {
        for (node n : targets.nodes) {
            if (n == node::processes) entry_p_ = true;
            if (n == node::structures) entry_s_ = true;
        }
    }

    void interpret_hop(const node_set& from, const token& op, const node_set& to, const clause& cl) {
        const std::size_t span_off = from.offset;
        const std::size_t span_len = to.offset + to.length - from.offset;
        if (op.kind == token_kind::broken) {
            result_.canonical = false;
            diag(severity::warning, diagnostic_code::broken_link, span_off, span_len,
                 "broken link marks a disrupted configuration outside the canonical space");
            return;
        }
        if (op.kind == token_kind::biarrow) {
            const bool ps = is_singleton(from, node::processes) && is_singleton(to, node::structures);
            const bool sp = is_singleton(from, node::structures) && is_singleton(to, node::processes);
            if (!ps && !sp) {
                diag(severity::error, diagnostic_code::unknown_token, span_off, span_len,
                     "bidirectional arrow is only defined between P and S");
                return;
            }
            bi_seen_ = true;
            return;
        }
        // Directed hop.
        if (is_singleton(from, node::input)) {
            if (!all_internal(to)) {
                diag(severity::error, diagnostic_code::unknown_token, span_off, span_len,
                     "input may only flow to P and/or S");
                return;
            }
            add_entry(to);
            return;
        }
        if (is_singleton(to, node::output) && all_internal(from)) {
            for (node n : from.nodes) {
                if (n == node::processes) exit_p_ = true;
                if (n == node::structures) exit_s_ = true;
            }
            return;
        }
        if (from.nodes.size() == 1 && to.nodes.size() == 1) {
            const node a = from.nodes[0];
            const node b = to.nodes[0];
            if (a == node::processes && b == node::structures) {
                mon_seen_ = true;
                return;
            }
            if (a == node::structures && b == node::processes) {
                ctl_seen_ = true;
                return;
            }
            if (auto backbone = backbone_index(a, b)) {
                backbone_seen_[*backbone] = true;
                if (cl.from_plus) {
                    diag(severity::warning, diagnostic_code::redundant_backbone_shortcut, span_off,
                         span_len,
                         "'" + std::string(node_name(a)) + "->" + std::string(node_name(b)) +
                             "' is a backbone edge, not a shortcut");
                }
                return;
            }
            if (auto sc = shortcut_for(a, b)) {
                explicit_shortcuts_ = explicit_shortcuts_.with(*sc);
                shortcuts_explicit_ = true;
                return;
            }
        }
        diag(severity::error, diagnostic_code::unknown_token, span_off, span_len,
             "unsupported connection in scenario notation");
    }

    static std::optional<int> backbone_index(node a, node b) {
        if (a == node::output && b == node::feedback) return 0;
        if (a == node::feedback && b == node::environment) return 1;
        if (a == node::environment && b == node::input) return 2;
        return std::nullopt;
    }

    static std::optional<shortcut> shortcut_for(node a, node b) {
        if (a == node::output && b == node::environment) return shortcut::oe;
        if (a == node::output && b == node::input) return shortcut::oi;
        if (a == node::feedback && b == node::input) return shortcut::fi;
        return std::nullopt;
    }

    parse_result finish() {
        // Entry / exit.
        if (!entry_p_ && !entry_s_) {
            error_whole_input(diagnostic_code::empty_entry,
                              "no entry pattern: input must flow into the internal system");
        }
        if (!exit_p_ && !exit_s_) {
            error_whole_input(diagnostic_code::empty_exit,
                              "no exit pattern: output must flow from the internal system");
        }
        // Arrangement.
        arrangement arr = arrangement::bottom_up;
        if (bi_seen_ && (mon_seen_ || ctl_seen_)) {
            error_whole_input(diagnostic_code::conflicting_arrangement,
                              "both a unidirectional and a bidirectional internal arrangement given");
        } else if (bi_seen_ || (mon_seen_ && ctl_seen_)) {
            arr = arrangement::bidirectional;
        } else if (mon_seen_) {
            arr = arrangement::bottom_up;
        } else if (ctl_seen_) {
            arr = arrangement::top_down;
        } else {
            error_whole_input(diagnostic_code::missing_arrangement,
                              "no internal arrangement between P and S given");
        }
        // External topology.
        const bool chain_mentioned = backbone_seen_[0] || backbone_seen_[1] || backbone_seen_[2];
        if (chain_mentioned && !(backbone_seen_[0] && backbone_seen_[1] && backbone_seen_[2])) {
            error_whole_input(diagnostic_code::missing_backbone,
                              "external chain must contain the full backbone O->F->E->I");
        }
        shortcut_set shortcuts = explicit_shortcuts_;
        if (topology_token_) {
            const shortcut_set from_token = topology_shortcuts(*topology_token_);
            if (!chain_mentioned && !shortcuts_explicit_) {
                shortcuts = from_token;
            } else if (from_token != shortcuts) {
                diag(severity::warning, diagnostic_code::topology_mismatch, topology_token_offset_,
                     topology_token_length_,
                     "topology annotation disagrees with the listed shortcuts; using the shortcuts");
            }
        } else if (!chain_mentioned && !shortcuts_explicit_) {
            diag(severity::warning, diagnostic_code::assumed_baseline_topology, 0, text_.size(),
                 "no external topology given; assuming the baseline O->F->E->I");
        }
        const bool failed = std::any_of(
            result_.diagnostics.begin(), result_.diagnostics.end(),
            [](const parse_diagnostic& d) { return d.level == severity::error; });
        if (!failed) {
            scenario s;
            s.entry = cluster_set::from_flags(entry_p_, entry_s_);
            s.internal = arr;
            s.exit = cluster_set::from_flags(exit_p_, exit_s_);
            s.shortcuts = shortcuts;
            result_.value = s;
        }
        return std::move(result_);
    }

    std::string_view text_;
    std::vector<clause> clauses_;
    parse_result result_;

    bool entry_p_ = false;
    bool entry_s_ = false;
    bool exit_p_ = false;
    bool exit_s_ = false;
    bool mon_seen_ = false;
    bool ctl_seen_ = false;
    bool bi_seen_ = false;
    bool backbone_seen_[3] = {false, false, false};
    shortcut_set explicit_shortcuts_;
    bool shortcuts_explicit_ = false;
    std::optional<int> topology_token_;
    std::size_t topology_token_offset_ = 0;
    std::size_t topology_token_length_ = 0;
};

struct arrow_glyphs {
    std::string_view arrow;
    std::string_view biarrow;
};

arrow_glyphs glyphs_for(const format_options& opts) {
    if (opts.unicode) return {"→", "↔"};
    return {"->", "<->"};
}

std::string cluster_text(cluster_set c) {
    if (c == cluster_set::ps()) return "{P,S}";
    return c.has_p() ? "P" : "S";
}

std::string arrangement_text(arrangement a, const arrow_glyphs& g) {
    switch (a) {
        case arrangement::bottom_up: return std::string("P") + std::string(g.arrow) + "S";
        case arrangement::top_down: return std::string("S") + std::string(g.arrow) + "P";
        default: return std::string("P") + std::string(g.biarrow) + "S";
    }
}

std::string external_text(shortcut_set sc, const arrow_glyphs& g) {
    const std::string a(g.arrow);
    std::string out = "O" + a + "F" + a + "E" + a + "I";
    for (shortcut s : sc.members()) {
        auto [from, to] = shortcut_edge(s);
        out += " + " + std::string(node_name(from)) + a + std::string(node_name(to));
    }
    return out;
}

}  // namespace

std::string_view style_name(notation_style s) {
    switch (s) {
        case notation_style::bracketed: return "bracketed";
        case notation_style::flat: return "flat";
        default: return "topology-short";
    }
}

std::optional<notation_style> style_from_name(std::string_view name) {
    if (name == "bracketed") return notation_style::bracketed;
    if (name == "flat") return notation_style::flat;
    if (name == "topology-short" || name == "topology_short" || name == "topology")
        return notation_style::topology_short;
    return std::nullopt;
}

std::string_view diagnostic_code_name(diagnostic_code c) {
    switch (c) {
        case diagnostic_code::empty_entry: return "empty-entry";
        case diagnostic_code::empty_exit: return "empty-exit";
        case diagnostic_code::unknown_token: return "unknown-token";
        case diagnostic_code::missing_backbone: return "missing-backbone";
        case diagnostic_code::conflicting_arrangement: return "conflicting-arrangement";
        case diagnostic_code::missing_arrangement: return "missing-arrangement";
        case diagnostic_code::topology_out_of_range: return "topology-out-of-range";
        case diagnostic_code::redundant_backbone_shortcut: return "redundant-backbone-shortcut";
        case diagnostic_code::unknown_annotation: return "unknown-annotation";
        case diagnostic_code::topology_mismatch: return "topology-mismatch";
        case diagnostic_code::broken_link: return "broken-link";
        case diagnostic_code::assumed_baseline_topology: return "assumed-baseline-topology";
        case diagnostic_code::too_many_errors: return "too-many-errors";
    }
    return "unknown";
}

bool parse_result::has_warnings() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const parse_diagnostic& d) { return d.level == severity::warning; });
}

parse_result parse_scenario(std::string_view text) { return parser(text).run(); }

std::string format_scenario(const scenario& s, notation_style style, format_options opts) {
    const arrow_glyphs g = glyphs_for(opts);
    const std::string a(g.arrow);
    std::ostringstream out;
    switch (style) {
        case notation_style::bracketed:
            out << "I " << a << " [" << cluster_text(s.entry) << ", "
                << arrangement_text(s.internal, g) << ", " << cluster_text(s.exit) << " " << a
                << "] O, " << external_text(s.shortcuts, g);
            break;
        case notation_style::flat:
            out << "I" << a << cluster_text(s.entry) << ", " << arrangement_text(s.internal, g)
                << ", " << cluster_text(s.exit) << a << "O, " << external_text(s.shortcuts, g);
            break;
        case notation_style::topology_short:
            out << "I" << a << cluster_text(s.entry) << ", " << arrangement_text(s.internal, g)
                << ", " << cluster_text(s.exit) << a << "O, Topology " << topology_id(s.shortcuts);
            break;
    }
    return out.str();
}

}  // namespace metascen::notation
