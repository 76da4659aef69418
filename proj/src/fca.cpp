#include "metascen/fca.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace metascen::fca {

namespace {

constexpr std::size_t word_bits = 64;

void check_unique(const std::vector<std::string>& names, const char* what) {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        throw context_error(std::string("duplicate ") + what + " '" + *dup + "'");
    }
}

}  // namespace

bitvec::bitvec(std::size_t size, bool value)
    : size_(size), words_((size + word_bits - 1) / word_bits, value ? ~std::uint64_t{0} : 0) {
    if (value && size_ % word_bits != 0) {
        words_.back() &= (std::uint64_t{1} << (size_ % word_bits)) - 1;
    }
}

bool bitvec::test(std::size_t i) const {
    if (i >= size_) throw context_error("bit index out of range");
    return (words_[i / word_bits] >> (i % word_bits)) & 1u;
}

void bitvec::set(std::size_t i, bool value) {
    if (i >= size_) throw context_error("bit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (i % word_bits);
    if (value) {
        words_[i / word_bits] |= mask;
    } else {
        words_[i / word_bits] &= ~mask;
    }
}

std::size_t bitvec::count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bitvec& bitvec::operator&=(const bitvec& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

bitvec& bitvec::operator|=(const bitvec& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

bool bitvec::is_subset_of(const bitvec& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

std::vector<std::size_t> bitvec::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) out.push_back(i);
    }
    return out;
}

formal_context::formal_context(std::vector<std::string> objects,
                               std::vector<std::string> attributes)
    : objects_(std::move(objects)), attributes_(std::move(attributes)) {
    check_unique(objects_, "object");
    check_unique(attributes_, "attribute");
    rows_.assign(objects_.size(), bitvec(attributes_.size()));
    cols_.assign(attributes_.size(), bitvec(objects_.size()));
}

std::optional<std::size_t> formal_context::object_index(std::string_view name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (objects_[i] == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> formal_context::attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (attributes_[i] == name) return i;
    }
    return std::nullopt;
}

void formal_context::set(std::size_t obj, std::size_t attr, bool value) {
    rows_.at(obj).set(attr, value);
    cols_.at(attr).set(obj, value);
}

bool formal_context::incidence(std::size_t obj, std::size_t attr) const {
    return rows_.at(obj).test(attr);
}

bitvec formal_context::common_attributes(const bitvec& objs) const {
    bitvec out(attribute_count(), true);
    for (std::size_t o = 0; o < object_count(); ++o) {
        if (objs.test(o)) out &= rows_[o];
    }
    return out;
}

bitvec formal_context::common_objects(const bitvec& attrs) const {
    bitvec out(object_count(), true);
    for (std::size_t a = 0; a < attribute_count(); ++a) {
        if (attrs.test(a)) out &= cols_[a];
    }
    return out;
}

bitvec formal_context::closure(const bitvec& attrs) const {
    return common_attributes(common_objects(attrs));
}

formal_context formal_context::restricted_to(std::span<const std::string> object_names) const {
    std::vector<std::string> keep(object_names.begin(), object_names.end());
    formal_context out(keep, attributes_);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        auto idx = object_index(keep[i]);
        if (!idx) throw context_error("unknown object '" + keep[i] + "'");
        for (std::size_t a = 0; a < attribute_count(); ++a) {
            if (rows_[*idx].test(a)) out.set(i, a);
        }
    }
    return out;
}

formal_context formal_context::without_object(std::string_view object_name) const {
    if (!object_index(object_name)) {
        throw context_error("unknown object '" + std::string(object_name) + "'");
    }
    std::vector<std::string> keep;
    for (const std::string& name : objects_) {
        if (name != object_name) keep.push_back(name);
    }
    return restricted_to(keep);
}

formal_context formal_context::clarified() const {
    std::vector<std::string> names;
    std::vector<bitvec> kept_rows;
    for (std::size_t o = 0; o < object_count(); ++o) {
        bool merged = false;
        for (std::size_t k = 0; k < kept_rows.size(); ++k) {
            if (kept_rows[k] == rows_[o]) {
                names[k] += "|" + objects_[o];
                merged = true;
                break;
            }
        }
        if (!merged) {
            names.push_back(objects_[o]);
            kept_rows.push_back(rows_[o]);
        }
    }
    formal_context out(names, attributes_);
    for (std::size_t o = 0; o < kept_rows.size(); ++o) {
        for (std::size_t a = 0; a < attribute_count(); ++a) {
            if (kept_rows[o].test(a)) out.set(o, a);
        }
    }
    return out;
}

namespace {

std::vector<std::string> schema_attributes(bool derived, bool tiers) {
    std::vector<std::string> out;
    for (std::string_view name : attribute_vector::names()) out.emplace_back(name);
    if (derived) {
        out.emplace_back("parallel-entry");
        out.emplace_back("dual-exit");
        out.emplace_back("bidirectional");
    }
    if (tiers) {
        out.emplace_back(tier_attribute_name(tier::novice));
        out.emplace_back(tier_attribute_name(tier::developing));
        out.emplace_back(tier_attribute_name(tier::expert_adaptive));
    }
    return out;
}

void fill_structural(formal_context& ctx, std::size_t obj, const scenario& s, bool derived) {
    const attribute_vector v = attributes_of(s);
    for (int a = 0; a < attribute_vector::count; ++a) {
        if (v.test(a)) ctx.set(obj, static_cast<std::size_t>(a));
    }
    if (derived) {
        const std::size_t base = attribute_vector::count;
        if (v.parallel_entry()) ctx.set(obj, base);
        if (v.dual_exit()) ctx.set(obj, base + 1);
        if (v.bidirectional()) ctx.set(obj, base + 2);
    }
}

}  // namespace

formal_context build_context(const catalog& c, context_schema schema) {
    const bool any_tier = std::any_of(c.entries.begin(), c.entries.end(),
                                      [](const catalog_entry& e) { return e.tier_label.has_value(); });
    const bool tiers = schema.tiers && any_tier;
    std::vector<std::string> objects;
    for (const catalog_entry& e : c.entries) objects.push_back(e.label);
    check_unique(objects, "object label");
    formal_context ctx(objects, schema_attributes(schema.derived, tiers));
    for (std::size_t o = 0; o < c.entries.size(); ++o) {
        const catalog_entry& e = c.entries[o];
        fill_structural(ctx, o, e.config, schema.derived);
        if (tiers && e.tier_label) {
            auto idx = ctx.attribute_index(tier_attribute_name(*e.tier_label));
            ctx.set(o, *idx);
        }
    }
    return ctx;
}

formal_context build_context(std::span<const scenario> scenarios, context_schema schema) {
    std::vector<std::string> objects;
    for (const scenario& s : scenarios) {
        objects.push_back(s.label ? *s.label : "K" + std::to_string(s.key()));
    }
    check_unique(objects, "object label");
    formal_context ctx(objects, schema_attributes(schema.derived, false));
    for (std::size_t o = 0; o < scenarios.size(); ++o) {
        fill_structural(ctx, o, scenarios[o], schema.derived);
    }
    return ctx;
}

namespace {

// NextClosure over an arbitrary closure operator: enumerates all closed sets
// in lectic order, starting from closure(empty).
template <typename Closure>
std::vector<bitvec> enumerate_closed(std::size_t m, const Closure& close) {
    std::vector<bitvec> out;
    bitvec current = close(bitvec(m));
    out.push_back(current);
    while (current.count() < m) {
        bool advanced = false;
        bitvec a = current;
        for (std::size_t ii = m; ii-- > 0;) {
            if (a.test(ii)) {
                a.set(ii, false);
                continue;
            }
            bitvec candidate = a;
            candidate.set(ii);
            candidate = close(candidate);
            // Lectic successor requires no new attribute below ii.
            bool ok = true;
            for (std::size_t j = 0; j < ii; ++j) {
                if (candidate.test(j) && !a.test(j)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                current = candidate;
                out.push_back(current);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace

std::vector<formal_concept> all_concepts(const formal_context& ctx) {
    const auto close = [&ctx](const bitvec& b) { return ctx.closure(b); };
    std::vector<formal_concept> out;
    for (bitvec& intent : enumerate_closed(ctx.attribute_count(), close)) {
        formal_concept c;
        c.extent = ctx.common_objects(intent);
        c.intent = std::move(intent);
        out.push_back(std::move(c));
    }
    return out;
}

concept_lattice build_lattice(const formal_context& ctx, std::vector<formal_concept> concepts) {
    concept_lattice lat;
    lat.concepts = std::move(concepts);
    const int n = static_cast<int>(lat.concepts.size());

    // Meet/join totality: the closure of any intent union and any intent
    // intersection must be present.
    std::map<std::vector<std::size_t>, int> by_intent;
    for (int i = 0; i < n; ++i) {
        by_intent[lat.concepts[static_cast<std::size_t>(i)].intent.indices()] = i;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bitvec& a = lat.concepts[static_cast<std::size_t>(i)].intent;
            const bitvec& b = lat.concepts[static_cast<std::size_t>(j)].intent;
            if (!by_intent.contains(ctx.closure(a | b).indices()) ||
                !by_intent.contains((a & b).indices())) {
                throw context_error("incomplete concept set: missing meet or join");
            }
        }
    }

    // Order by extent inclusion, then reduce transitively to covers.
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j &&
                lat.concepts[static_cast<std::size_t>(i)].extent.is_subset_of(
                    lat.concepts[static_cast<std::size_t>(j)].extent)) {
                leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            bool direct = true;
            for (int k = 0; k < n; ++k) {
                if (k != i && k != j && leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    leq[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
                    direct = false;
                    break;
                }
            }
            if (direct) lat.covers.emplace_back(i, j);
        }
    }
    std::sort(lat.covers.begin(), lat.covers.end());

    for (int i = 0; i < n; ++i) {
        const formal_concept& c = lat.concepts[static_cast<std::size_t>(i)];
        if (c.extent.count() == ctx.object_count()) lat.top = i;
        if (c.intent.count() == ctx.attribute_count()) lat.bottom = i;
    }
    return lat;
}

implication make_implication(const formal_context& ctx, std::span<const std::string> premise,
                             std::span<const std::string> conclusion) {
    implication imp{bitvec(ctx.attribute_count()), bitvec(ctx.attribute_count())};
    for (const std::string& name : premise) {
        auto idx = ctx.attribute_index(name);
        if (!idx) throw context_error("unknown attribute '" + name + "'");
        imp.premise.set(*idx);
    }
    for (const std::string& name : conclusion) {
        auto idx = ctx.attribute_index(name);
        if (!idx) throw context_error("unknown attribute '" + name + "'");
        imp.conclusion.set(*idx);
    }
    return imp;
}

implication parse_implication(const formal_context& ctx, std::string_view text) {
    std::string body(text);
    std::size_t pos = body.find("=>");
    std::size_t arrow_len = 2;
    if (pos == std::string::npos) {
        pos = body.find("⇒");  // ⇒
        arrow_len = 3;
    }
    if (pos == std::string::npos) {
        throw context_error("implication must contain '=>'");
    }
    auto names = [](std::string part) {
        for (char& c : part) {
            if (c == '{' || c == '}' || c == ',') c = ' ';
        }
        std::istringstream in(part);
        std::vector<std::string> out;
        std::string word;
        while (in >> word) out.push_back(word);
        return out;
    };
    const std::vector<std::string> premise = names(body.substr(0, pos));
    const std::vector<std::string> conclusion = names(body.substr(pos + arrow_len));
    return make_implication(ctx, premise, conclusion);
}

std::string implication_to_string(const formal_context& ctx, const implication& imp) {
    auto side = [&](const bitvec& b) {
        std::string out = "{";
        bool first = true;
        for (std::size_t a : b.indices()) {
            if (!first) out += ", ";
            out += ctx.attributes()[a];
            first = false;
        }
        return out + "}";
    };
    return side(imp.premise) + " => " + side(imp.conclusion);
}

verification verify_implication(const formal_context& ctx, const implication& imp) {
    verification out;
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        const bitvec& row = ctx.row(o);
        if (imp.premise.is_subset_of(row) && !imp.conclusion.is_subset_of(row)) {
            out.counterexamples.push_back(ctx.objects()[o]);
        }
    }
    out.holds = out.counterexamples.empty();
    return out;
}

namespace {

// Saturation that fires premises only on proper supersets; the sets closed
// under this operator are the intents and pseudo-intents.
bitvec pseudo_saturate(const std::vector<implication>& basis, bitvec x) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const implication& imp : basis) {
            if (imp.premise.is_subset_of(x) && imp.premise != x && !imp.conclusion.is_subset_of(x)) {
                x |= imp.conclusion;
                changed = true;
            }
        }
    }
    return x;
}

bitvec saturate(std::span<const implication> basis, bitvec x) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const implication& imp : basis) {
            if (imp.premise.is_subset_of(x) && !imp.conclusion.is_subset_of(x)) {
                x |= imp.conclusion;
                changed = true;
            }
        }
    }
    return x;
}

}  // namespace

std::vector<implication> implication_basis(const formal_context& ctx) {
    const std::size_t m = ctx.attribute_count();
    std::vector<implication> basis;
    bitvec a = pseudo_saturate(basis, bitvec(m));
    while (true) {
        const bitvec closed = ctx.closure(a);
        if (closed != a) basis.push_back({a, closed});
        if (a.count() == m) break;
        // Lectic-next set closed under the basis found so far.
        bool advanced = false;
        bitvec probe = a;
        for (std::size_t ii = m; ii-- > 0;) {
            if (probe.test(ii)) {
                probe.set(ii, false);
                continue;
            }
            bitvec candidate = probe;
            candidate.set(ii);
            candidate = pseudo_saturate(basis, candidate);
            bool ok = true;
            for (std::size_t j = 0; j < ii; ++j) {
                if (candidate.test(j) && !probe.test(j)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                a = candidate;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return basis;
}

bool entails(std::span<const implication> basis, const implication& imp) {
    return imp.conclusion.is_subset_of(saturate(basis, imp.premise));
}

std::string to_cxt(const formal_context& ctx, std::string_view name) {
    std::ostringstream out;
    out << "B\n" << name << "\n";
    out << ctx.object_count() << "\n" << ctx.attribute_count() << "\n\n";
    for (const std::string& o : ctx.objects()) out << o << "\n";
    for (const std::string& a : ctx.attributes()) out << a << "\n";
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        for (std::size_t a = 0; a < ctx.attribute_count(); ++a) {
            out << (ctx.incidence(o, a) ? 'X' : '.');
        }
        out << "\n";
    }
    return out.str();
}

formal_context from_cxt(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    if (lines.empty() || lines[0] != "B") throw context_error("CXT file must start with 'B'");

    std::size_t pos = 1;
    auto next_nonblank = [&]() -> std::string {
        while (pos < lines.size() && lines[pos].empty()) ++pos;
        if (pos >= lines.size()) throw context_error("unexpected end of CXT file");
        return lines[pos++];
    };
    auto parse_count = [&](const std::string& s) {
        try {
            return std::stoul(s);
        } catch (const std::exception&) {
            throw context_error("expected a count in CXT file, found '" + s + "'");
        }
    };
    // Optional context name line between 'B' and the counts.
    std::string first = next_nonblank();
    std::size_t object_count = 0;
    bool named = false;
    try {
        object_count = std::stoul(first);
    } catch (const std::exception&) {
        named = true;
    }
    if (named) object_count = parse_count(next_nonblank());
    const std::size_t attribute_count = parse_count(next_nonblank());

    std::vector<std::string> objects;
    for (std::size_t i = 0; i < object_count; ++i) objects.push_back(next_nonblank());
    std::vector<std::string> attributes;
    for (std::size_t i = 0; i < attribute_count; ++i) attributes.push_back(next_nonblank());

    formal_context ctx(objects, attributes);
    for (std::size_t o = 0; o < object_count; ++o) {
        const std::string row = next_nonblank();
        if (row.size() < attribute_count) throw context_error("CXT incidence row too short");
        for (std::size_t a = 0; a < attribute_count; ++a) {
            if (row[a] == 'X' || row[a] == 'x') ctx.set(o, a);
        }
    }
    return ctx;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> csv_parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            row.push_back(field);
            field.clear();
            rows.push_back(row);
            row.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string to_csv(const formal_context& ctx) {
    std::ostringstream out;
    for (const std::string& a : ctx.attributes()) out << "," << csv_escape(a);
    out << "\n";
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        out << csv_escape(ctx.objects()[o]);
        for (std::size_t a = 0; a < ctx.attribute_count(); ++a) {
            out << "," << (ctx.incidence(o, a) ? "X" : "");
        }
        out << "\n";
    }
    return out.str();
}

formal_context from_csv(std::string_view text) {
    const std::vector<std::vector<std::string>> rows = csv_parse(text);
    if (rows.empty()) throw context_error("empty CSV context");
    std::vector<std::string> attributes(rows[0].begin() + 1, rows[0].end());
    std::vector<std::string> objects;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].empty()) continue;
        objects.push_back(rows[r][0]);
    }
    formal_context ctx(objects, attributes);
    std::size_t o = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].empty()) continue;
        for (std::size_t a = 0; a < attributes.size() && a + 1 < rows[r].size(); ++a) {
            std::string cell = rows[r][a + 1];
            cell.erase(std::remove(cell.begin(), cell.end(), ' '), cell.end());
            if (cell == "X" || cell == "x") ctx.set(o, a);
        }
        ++o;
    }
    return ctx;
}

std::string lattice_to_dot(const formal_context& ctx, const concept_lattice& lattice) {
    const int n = static_cast<int>(lattice.concepts.size());
    // Reduced labeling: an attribute labels the concept whose extent equals
    // the attribute extent; an object labels the concept whose intent equals
    // the object intent.
    std::vector<std::vector<std::string>> attr_labels(static_cast<std::size_t>(n));
    std::vector<std::vector<std::string>> object_labels(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < ctx.attribute_count(); ++a) {
        bitvec single(ctx.attribute_count());
        single.set(a);
        const bitvec extent = ctx.common_objects(single);
        for (int i = 0; i < n; ++i) {
            if (lattice.concepts[static_cast<std::size_t>(i)].extent == extent) {
                attr_labels[static_cast<std::size_t>(i)].push_back(ctx.attributes()[a]);
                break;
            }
        }
    }
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        const bitvec intent = ctx.row(o);
        for (int i = 0; i < n; ++i) {
            if (lattice.concepts[static_cast<std::size_t>(i)].intent == intent) {
                object_labels[static_cast<std::size_t>(i)].push_back(ctx.objects()[o]);
                break;
            }
        }
    }
    auto join = [](const std::vector<std::string>& parts) {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ", ";
            out += parts[i];
        }
        return out;
    };
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=record];\n";
    for (int i = 0; i < n; ++i) {
        out << "  c" << i << " [label=\"{" << join(attr_labels[static_cast<std::size_t>(i)])
            << "|" << join(object_labels[static_cast<std::size_t>(i)]) << "}\"];\n";
    }
    for (auto [lower, upper] : lattice.covers) {
        out << "  c" << lower << " -> c" << upper << ";\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::ordered_json concept_to_json(const formal_context& ctx, const formal_concept& c) {
    nlohmann::ordered_json out;
    nlohmann::ordered_json extent = nlohmann::ordered_json::array();
    for (std::size_t o : c.extent.indices()) extent.push_back(ctx.objects()[o]);
    nlohmann::ordered_json intent = nlohmann::ordered_json::array();
    for (std::size_t a : c.intent.indices()) intent.push_back(ctx.attributes()[a]);
    out["extent"] = extent;
    out["intent"] = intent;
    return out;
}

nlohmann::ordered_json lattice_to_json(const formal_context& ctx, const concept_lattice& lattice) {
    nlohmann::ordered_json out;
    nlohmann::ordered_json concepts = nlohmann::ordered_json::array();
    for (const formal_concept& c : lattice.concepts) concepts.push_back(concept_to_json(ctx, c));
    out["concepts"] = concepts;
    nlohmann::ordered_json covers = nlohmann::ordered_json::array();
    for (auto [lower, upper] : lattice.covers) {
        covers.push_back(nlohmann::ordered_json::array({lower, upper}));
    }
    out["covers"] = covers;
    out["top"] = lattice.top;
    out["bottom"] = lattice.bottom;
    return out;
}

}  // namespace metascen::fca
