#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "metascen/catalog.hpp"
#include "metascen/scenario.hpp"

namespace metascen::fca {

class context_error : public error {
public:
    using error::error;
};

// Fixed-size bit vector sized at construction. Out-of-range access throws.
class bitvec {
public:
    bitvec() = default;
    explicit bitvec(std::size_t size, bool value = false);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);

    std::size_t count() const;
    bool none() const { return count() == 0; }

    bitvec& operator&=(const bitvec& other);
    bitvec& operator|=(const bitvec& other);
    friend bitvec operator&(bitvec a, const bitvec& b) { return a &= b; }
    friend bitvec operator|(bitvec a, const bitvec& b) { return a |= b; }

    bool is_subset_of(const bitvec& other) const;
    bool operator==(const bitvec& other) const = default;

    std::vector<std::size_t> indices() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Objects x attributes incidence table with unique names on both axes.
class formal_context {
public:
    formal_context() = default;
    // Throws context_error on duplicate object or attribute names.
    formal_context(std::vector<std::string> objects, std::vector<std::string> attributes);

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }
    std::optional<std::size_t> object_index(std::string_view name) const;
    std::optional<std::size_t> attribute_index(std::string_view name) const;

    void set(std::size_t obj, std::size_t attr, bool value = true);
    bool incidence(std::size_t obj, std::size_t attr) const;
    const bitvec& row(std::size_t obj) const { return rows_.at(obj); }

    // Derivation operators.
    bitvec common_attributes(const bitvec& objs) const;  // extent'
    bitvec common_objects(const bitvec& attrs) const;    // intent'
    bitvec closure(const bitvec& attrs) const;           // attrs''

    // Sub-context over a subset of objects (attribute list unchanged).
    formal_context restricted_to(std::span<const std::string> object_names) const;
    formal_context without_object(std::string_view object_name) const;

    // Object clarification: merges identical rows, joining names with '|'.
    formal_context clarified() const;

private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<bitvec> rows_;  // per object, over attributes
    std::vector<bitvec> cols_;  // per attribute, over objects
};

struct context_schema {
    bool derived = true;  // parallel-entry, dual-exit, bidirectional
    bool tiers = true;    // tier flags, when the input carries tiers
};

formal_context build_context(const catalog& c, context_schema schema = {});
formal_context build_context(std::span<const scenario> scenarios, context_schema schema = {});

// A closed (extent, intent) pair.
struct formal_concept {
    bitvec extent;
    bitvec intent;
    bool operator==(const formal_concept& other) const = default;
};

// Complete, duplicate-free concept set in lectic order on intents.
std::vector<formal_concept> all_concepts(const formal_context& ctx);

struct concept_lattice {
    std::vector<formal_concept> concepts;
    // Hasse covering relation under extent inclusion: (lower, upper) index pairs.
    std::vector<std::pair<int, int>> covers;
    int top = -1;     // extent = all objects
    int bottom = -1;  // intent = all attributes
};

// Verifies meet/join totality; throws context_error when the concept set is
// incomplete for the context.
concept_lattice build_lattice(const formal_context& ctx, std::vector<formal_concept> concepts);

struct implication {
    bitvec premise;
    bitvec conclusion;
};

// Resolves attribute names; throws context_error for unknown names.
implication make_implication(const formal_context& ctx, std::span<const std::string> premise,
                             std::span<const std::string> conclusion);

// Parses "a, b => c" (also accepts unicode arrows and braces).
implication parse_implication(const formal_context& ctx, std::string_view text);

std::string implication_to_string(const formal_context& ctx, const implication& imp);

struct verification {
    bool holds = false;
    std::vector<std::string> counterexamples;  // violating object names
};

verification verify_implication(const formal_context& ctx, const implication& imp);

// Duquenne-Guigues canonical basis: sound, complete and minimal.
std::vector<implication> implication_basis(const formal_context& ctx);

// True when the implication follows from the given set (attribute sets are
// saturated under the implications).
bool entails(std::span<const implication> basis, const implication& imp);

// Burmeister CXT format.
std::string to_cxt(const formal_context& ctx, std::string_view name = "");
formal_context from_cxt(std::string_view text);  // throws context_error

// CSV: objects as rows, attributes as columns, X/blank incidence.
std::string to_csv(const formal_context& ctx);
formal_context from_csv(std::string_view text);  // throws context_error

// DOT rendering of the Hasse diagram with reduced labeling.
std::string lattice_to_dot(const formal_context& ctx, const concept_lattice& lattice);

nlohmann::ordered_json concept_to_json(const formal_context& ctx, const formal_concept& c);
nlohmann::ordered_json lattice_to_json(const formal_context& ctx, const concept_lattice& lattice);

}  // namespace metascen::fca
