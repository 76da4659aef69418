#include "metascen/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "metascen/catalog.hpp"
#include "metascen/fca.hpp"
#include "metascen/filters.hpp"
#include "metascen/notation.hpp"
#include "metascen/serialize.hpp"
#include "metascen/trajectory.hpp"

namespace metascen::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_strict_mismatch = 3;

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw error("cannot open output file '" + out_path + "'");
    file << text;
}

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

void print_diagnostics(const notation::parse_result& result, std::ostream& err) {
    for (const notation::parse_diagnostic& d : result.diagnostics) {
        err << (d.level == notation::severity::error ? "error" : "warning") << " ["
            << notation::diagnostic_code_name(d.code) << "] at " << d.offset << ".."
            << d.offset + d.length << ": " << d.message << "\n";
    }
}

scenario parse_or_throw(const std::string& text, std::ostream& err) {
    const notation::parse_result result = notation::parse_scenario(text);
    print_diagnostics(result, err);
    if (!result.ok()) throw error("cannot parse scenario notation");
    return *result.value;
}

nlohmann::ordered_json diagnostics_to_json(const notation::parse_result& result) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const notation::parse_diagnostic& d : result.diagnostics) {
        nlohmann::ordered_json item;
        item["severity"] = d.level == notation::severity::error ? "error" : "warning";
        item["code"] = notation::diagnostic_code_name(d.code);
        item["offset"] = d.offset;
        item["length"] = d.length;
        item["message"] = d.message;
        list.push_back(item);
    }
    return list;
}

// ---------------------------------------------------------------- enumerate

struct enumerate_opts {
    bool count = false;
    bool full = false;
    std::string format = "table";
    std::string style = "flat";
    bool unicode = false;
    int topology = 0;  // 0 = no filter
    std::string internal;
    std::string entry;
    std::string exit_pattern;
};

std::optional<cluster_set> cluster_from_option(const std::string& text) {
    std::string v = text;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "p") return cluster_set::p();
    if (v == "s") return cluster_set::s();
    if (v == "ps" || v == "p,s" || v == "both") return cluster_set::ps();
    return std::nullopt;
}

int cmd_enumerate(const enumerate_opts& opts, std::string out_path, std::ostream& out) {
    std::vector<scenario> space = enumerate_space();
    bool filtered = false;
    auto drop = [&](auto pred) {
        space.erase(std::remove_if(space.begin(), space.end(), pred), space.end());
        filtered = true;
    };
    if (opts.topology != 0) {
        if (opts.topology < 1 || opts.topology > topology_count) {
            throw error("topology id out of range 1..8");
        }
        drop([&](const scenario& s) { return topology_id(s.shortcuts) != opts.topology; });
    }
    if (!opts.internal.empty()) {
        auto a = arrangement_from_name(opts.internal);
        if (!a) throw error("unknown internal arrangement '" + opts.internal + "'");
        drop([&](const scenario& s) { return s.internal != *a; });
    }
    if (!opts.entry.empty()) {
        auto c = cluster_from_option(opts.entry);
        if (!c) throw error("unknown entry pattern '" + opts.entry + "' (use P, S or PS)");
        drop([&](const scenario& s) { return s.entry != *c; });
    }
    if (!opts.exit_pattern.empty()) {
        auto c = cluster_from_option(opts.exit_pattern);
        if (!c) throw error("unknown exit pattern '" + opts.exit_pattern + "' (use P, S or PS)");
        drop([&](const scenario& s) { return s.exit != *c; });
    }

    auto style = notation::style_from_name(opts.style);
    if (!style) throw error("unknown notation style '" + opts.style + "'");
    const notation::format_options fmt{opts.unicode};

    std::ostringstream text;
    if (opts.format == "json") {
        nlohmann::ordered_json body;
        body["count"] = static_cast<int>(space.size());
        if (opts.full || !opts.count) {
            nlohmann::ordered_json items = nlohmann::ordered_json::array();
            for (const scenario& s : space) {
                nlohmann::ordered_json item = scenario_to_json(s);
                item["notation"] = notation::format_scenario(s, *style, fmt);
                items.push_back(item);
            }
            if (opts.full) body["scenarios"] = items;
        }
        text << dump_json(body);
    } else if (opts.count) {
        text << space.size() << "\n";
    } else {
        text << space.size() << " scenarios";
        if (!filtered) text << " (3 internal x 9 cross-cluster x 8 topologies)";
        text << "\n";
        if (opts.full) {
            for (const scenario& s : space) {
                text << std::setw(3) << s.key() << "  "
                     << notation::format_scenario(s, *style, fmt) << "\n";
            }
        }
    }
    write_output(text.str(), out_path, out);
    return exit_ok;
}

// ------------------------------------------------------------------- filter

struct filter_opts {
    std::string config = "shipped";
    std::string only_rule;
    bool strict = false;
    bool full = false;
    std::string format = "table";
};

filters::pipeline_config load_config(const std::string& name_or_path) {
    if (name_or_path == "shipped") return filters::pipeline_config::shipped();
    if (name_or_path == "strict-rules") return filters::pipeline_config::strict_rules();
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(slurp(name_or_path));
    } catch (const nlohmann::json::exception& ex) {
        throw filters::config_error(name_or_path + ": " + ex.what());
    }
    return filters::pipeline_config::from_json(parsed);
}

int cmd_filter(const filter_opts& opts, std::string out_path, std::ostream& out) {
    filters::pipeline_config cfg = load_config(opts.config);
    if (!opts.only_rule.empty()) cfg = cfg.only_rule(opts.only_rule);
    const std::vector<scenario> space = enumerate_space();
    const filters::pipeline_result result = filters::run_pipeline(cfg, space);

    std::ostringstream text;
    if (opts.format == "json") {
        text << dump_json(filters::pipeline_result_to_json(cfg, result));
    } else {
        text << "pipeline: " << cfg.name << "\n";
        text << "stage  in    out   dropped  target  match  rules\n";
        for (const filters::stage_report& r : result.stages) {
            std::string rules;
            for (const std::string& name : r.rule_names) {
                if (!rules.empty()) rules += ", ";
                rules += name;
            }
            if (rules.empty()) rules = "(none)";
            std::string target = r.reference_target ? std::to_string(*r.reference_target) : "-";
            std::string match = r.reference_target ? (r.matches_reference_target ? "yes" : "no") : "-";
            text << std::left << std::setw(7) << r.stage << std::setw(6) << r.input_count
                 << std::setw(6) << r.output_count << std::setw(9) << r.eliminations.size()
                 << std::setw(8) << target << std::setw(7) << match << rules << "\n";
            if (!r.note.empty()) text << "       note: " << r.note << "\n";
        }
        text << "final: " << result.survivors.size() << " scenarios\n";
        if (opts.full) {
            for (const scenario& s : result.survivors) {
                text << std::setw(3) << s.key() << "  "
                     << notation::format_scenario(s, notation::notation_style::flat) << "\n";
            }
        }
    }
    write_output(text.str(), out_path, out);

    if (opts.strict) {
        const std::vector<int> want = appendix2_catalog().distinct_keys();
        std::vector<int> got;
        for (const scenario& s : result.survivors) got.push_back(s.key());
        std::vector<int> want_sorted = want;
        std::sort(want_sorted.begin(), want_sorted.end());
        std::sort(got.begin(), got.end());
        const bool end_state_ok = got == want_sorted;
        const bool targets_ok =
            std::all_of(result.stages.begin(), result.stages.end(),
                        [](const filters::stage_report& r) {
                            return !r.reference_target || r.matches_reference_target;
                        });
        if (!end_state_ok || !targets_ok) return exit_strict_mismatch;
    }
    return exit_ok;
}

// ----------------------------------------------------------- context loading

struct context_opts {
    std::string catalog_name = "appendix2";
    std::string context_path;
    bool no_derived = false;
    bool no_tiers = false;
    bool dedup = false;
};

const catalog& catalog_by_name(const std::string& name) {
    if (name == "appendix2") return appendix2_catalog();
    if (name == "table1") return table1_catalog();
    throw error("unknown catalog '" + name + "' (use appendix2 or table1)");
}

fca::formal_context load_context(const context_opts& opts) {
    fca::formal_context ctx;
    if (!opts.context_path.empty()) {
        const std::string text = slurp(opts.context_path);
        if (opts.context_path.ends_with(".csv")) {
            ctx = fca::from_csv(text);
        } else {
            ctx = fca::from_cxt(text);
        }
    } else {
        fca::context_schema schema;
        schema.derived = !opts.no_derived;
        schema.tiers = !opts.no_tiers;
        ctx = fca::build_context(catalog_by_name(opts.catalog_name), schema);
    }
    if (opts.dedup) ctx = ctx.clarified();
    return ctx;
}

// ------------------------------------------------------------------ lattice

int cmd_lattice(const context_opts& opts, const std::string& format, std::string out_path,
                std::ostream& out) {
    const fca::formal_context ctx = load_context(opts);
    const fca::concept_lattice lattice = fca::build_lattice(ctx, fca::all_concepts(ctx));
    std::string text;
    if (format == "json") {
        text = dump_json(fca::lattice_to_json(ctx, lattice));
    } else {
        text = fca::lattice_to_dot(ctx, lattice);
    }
    write_output(text, out_path, out);
    return exit_ok;
}

// -------------------------------------------------------------- implications

struct findings_check {
    std::string description;
    std::string implication_text;
    bool holds = false;
    std::vector<std::string> counterexamples;
};

struct finding_report {
    int number = 0;
    std::string title;
    std::string comment;
    std::vector<findings_check> checks;
};

findings_check run_check(const fca::formal_context& ctx, const std::string& description,
                         const std::string& text) {
    findings_check out;
    out.description = description;
    out.implication_text = text;
    const fca::implication imp = fca::parse_implication(ctx, text);
    const fca::verification v = fca::verify_implication(ctx, imp);
    out.holds = v.holds;
    out.counterexamples = v.counterexamples;
    return out;
}

std::vector<finding_report> evaluate_findings(const fca::formal_context& ctx) {
    std::vector<finding_report> out;

    finding_report f1;
    f1.number = 1;
    f1.title = "self-monitoring as the developmental gateway";
    f1.checks.push_back(run_check(ctx, "developing tier implies self-monitoring",
                                  "tier:developing => sc:OI"));
    f1.checks.push_back(run_check(
        ctx, "expert tier implies self-monitoring and direct feedback", "tier:expert => sc:OI, sc:FI"));
    {
        const fca::formal_context beyond_s1 = ctx.without_object("S1");
        findings_check c = run_check(beyond_s1, "all scenarios beyond S1 carry self-monitoring",
                                     "{} => sc:OI");
        f1.checks.push_back(std::move(c));
    }
    f1.comment = "the strict all-beyond-S1 reading fails on the listed counterexamples";
    out.push_back(std::move(f1));

    finding_report f2;
    f2.number = 2;
    f2.title = "multiple pathways to expertise";
    f2.checks.push_back(run_check(ctx, "expert tier does NOT force bidirectional integration",
                                  "tier:expert => bidirectional"));
    f2.comment = "the counterexamples are the non-bidirectional expert routes";
    out.push_back(std::move(f2));

    finding_report f3;
    f3.number = 3;
    f3.title = "accumulation along the mainstream pathway";
    {
        const auto named = trajectory::named_trajectories();
        const auto it = std::find_if(named.begin(), named.end(),
                                     [](const trajectory::trajectory& t) {
                                         return t.name == "fca-mainstream";
                                     });
        const trajectory::monotonicity mono = trajectory::is_monotone(*it);
        findings_check c;
        c.description = "S1-S6-S7-S14-S17 only gains attributes";
        c.implication_text = "monotone(fca-mainstream)";
        c.holds = mono.monotone;
        for (const auto& [step, lost] : mono.violations) {
            std::string detail = "step " + std::to_string(step) + " loses {";
            bool first = true;
            for (std::string_view name : lost.set_names()) {
                if (!first) detail += ", ";
                detail += std::string(name);
                first = false;
            }
            detail += "}";
            c.counterexamples.push_back(detail);
        }
        f3.checks.push_back(std::move(c));
    }
    f3.comment = "the S1 to S6 transition swaps sc:FI for sc:OI under the atomic encoding";
    out.push_back(std::move(f3));

    finding_report f4;
    f4.number = 4;
    f4.title = "parallel entry as an unlocking threshold";
    f4.checks.push_back(run_check(
        ctx, "full internal integration with maximal connectivity implies parallel entry",
        "bidirectional, sc:OE, sc:OI, sc:FI => parallel-entry"));
    f4.comment = "fails as a strict implication; single-entry configurations reach topology 8";
    out.push_back(std::move(f4));

    finding_report f5;
    f5.number = 5;
    f5.title = "trade-off between internal architecture and external connectivity";
    {
        // Not an implication; report the correlation query instead.
        auto bi_idx = ctx.attribute_index("bidirectional");
        double sum_bi = 0, n_bi = 0, sum_uni = 0, n_uni = 0;
        std::vector<double> xs, ys;
        for (std::size_t o = 0; o < ctx.object_count(); ++o) {
            const auto& row = ctx.row(o);
            double count = 0;
            for (std::string_view name : {"sc:OE", "sc:OI", "sc:FI"}) {
                if (row.test(*ctx.attribute_index(std::string(name)))) count += 1;
            }
            const bool bi = bi_idx && row.test(*bi_idx);
            (bi ? sum_bi : sum_uni) += count;
            (bi ? n_bi : n_uni) += 1;
            xs.push_back(bi ? 1.0 : 0.0);
            ys.push_back(count);
        }
        const double mean_bi = n_bi > 0 ? sum_bi / n_bi : 0;
        const double mean_uni = n_uni > 0 ? sum_uni / n_uni : 0;
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(ys.size());
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        const double r = (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;
        std::ostringstream detail;
        detail << std::fixed << std::setprecision(2) << "mean shortcut count: bidirectional "
               << mean_bi << ", unidirectional " << mean_uni << "; correlation " << r;
        findings_check c;
        c.description = "shortcut count vs bidirectionality across the catalog";
        c.implication_text = detail.str();
        c.holds = true;  // a query, not a testable implication
        f5.checks.push_back(std::move(c));
    }
    f5.comment = "reported as a correlation query; no quantitative target exists";
    out.push_back(std::move(f5));

    return out;
}

struct implications_opts {
    context_opts context;
    bool basis = false;
    bool findings = false;
    std::vector<std::string> verify;
    std::string format = "table";
};

int cmd_implications(const implications_opts& opts, std::string out_path, std::ostream& out) {
    const fca::formal_context ctx = load_context(opts.context);
    const bool default_basis = !opts.basis && !opts.findings && opts.verify.empty();
    const bool show_basis = opts.basis || default_basis;

    std::vector<fca::implication> basis;
    if (show_basis) basis = fca::implication_basis(ctx);

    std::vector<finding_report> findings;
    if (opts.findings) {
        if (!opts.context.context_path.empty() || opts.context.catalog_name != "appendix2") {
            throw error("--findings requires the appendix2 context");
        }
        findings = evaluate_findings(ctx);
    }

    std::vector<findings_check> verifications;
    for (const std::string& text : opts.verify) {
        verifications.push_back(run_check(ctx, "requested", text));
    }

    std::ostringstream text;
    if (opts.format == "json") {
        nlohmann::ordered_json body;
        if (show_basis) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const fca::implication& imp : basis) {
                list.push_back(fca::implication_to_string(ctx, imp));
            }
            body["basis"] = list;
        }
        if (!verifications.empty()) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const findings_check& c : verifications) {
                nlohmann::ordered_json item;
                item["implication"] = c.implication_text;
                item["holds"] = c.holds;
                item["counterexamples"] = c.counterexamples;
                list.push_back(item);
            }
            body["verify"] = list;
        }
        if (opts.findings) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const finding_report& f : findings) {
                nlohmann::ordered_json item;
                item["finding"] = f.number;
                item["title"] = f.title;
                nlohmann::ordered_json checks = nlohmann::ordered_json::array();
                for (const findings_check& c : f.checks) {
                    nlohmann::ordered_json check;
                    check["description"] = c.description;
                    check["query"] = c.implication_text;
                    check["holds"] = c.holds;
                    check["counterexamples"] = c.counterexamples;
                    checks.push_back(check);
                }
                item["checks"] = checks;
                item["comment"] = f.comment;
                list.push_back(item);
            }
            body["findings"] = list;
        }
        text << dump_json(body);
    } else {
        if (show_basis) {
            text << "basis (" << basis.size() << " implications):\n";
            for (std::size_t i = 0; i < basis.size(); ++i) {
                text << "  " << std::setw(2) << i + 1 << ". "
                     << fca::implication_to_string(ctx, basis[i]) << "\n";
            }
        }
        auto print_check = [&text](const findings_check& c, const char* indent) {
            text << indent << c.description << ": " << c.implication_text << " -> "
                 << (c.holds ? "holds" : "fails");
            if (!c.counterexamples.empty()) {
                text << " [";
                for (std::size_t i = 0; i < c.counterexamples.size(); ++i) {
                    if (i) text << ", ";
                    text << c.counterexamples[i];
                }
                text << "]";
            }
            text << "\n";
        };
        for (const findings_check& c : verifications) print_check(c, "");
        if (opts.findings) {
            text << "findings:\n";
            for (const finding_report& f : findings) {
                text << "  " << f.number << ". " << f.title << "\n";
                for (const findings_check& c : f.checks) print_check(c, "     - ");
                if (!f.comment.empty()) text << "     note: " << f.comment << "\n";
            }
        }
    }
    write_output(text.str(), out_path, out);
    return exit_ok;
}

// ---------------------------------------------------------------- trajectory

struct trajectory_opts {
    std::vector<std::string> named;
    bool all = false;
    std::string steps;
    std::string from;
    std::string to;
    int max_hop = trajectory::default_max_hop;
    std::string format = "table";
};

std::string render_attr_set(const attribute_vector& v) {
    std::string out = "{";
    bool first = true;
    for (std::string_view name : v.set_names()) {
        if (!first) out += ", ";
        out += std::string(name);
        first = false;
    }
    return out + "}";
}

void print_trajectory(const trajectory::trajectory& t, std::ostream& text) {
    text << t.name << ":";
    for (const scenario& s : t.steps) {
        text << " " << (s.label ? *s.label : "K" + std::to_string(s.key()));
    }
    text << "\n";
    for (std::size_t i = 0; i < t.deltas.size(); ++i) {
        text << "  step " << i + 1 << ": gained " << render_attr_set(t.deltas[i].gained)
             << " lost " << render_attr_set(t.deltas[i].lost) << "\n";
    }
    for (const trajectory::threshold_event& e : t.thresholds) {
        const scenario& s = t.steps[static_cast<std::size_t>(e.step)];
        text << "  threshold " << trajectory::threshold_name(e.kind) << " at step " << e.step
             << " (" << (s.label ? *s.label : "K" + std::to_string(s.key())) << ")\n";
    }
    const trajectory::monotonicity mono = trajectory::is_monotone(t);
    text << "  monotone: " << (mono.monotone ? "yes" : "no");
    if (!mono.monotone) {
        for (const auto& [step, lost] : mono.violations) {
            text << "; step " << step << " loses " << render_attr_set(lost);
        }
    }
    text << "\n";
}

std::vector<scenario> steps_from_labels(const std::string& csv) {
    std::vector<scenario> steps;
    std::istringstream in(csv);
    std::string label;
    while (std::getline(in, label, ',')) {
        label.erase(std::remove(label.begin(), label.end(), ' '), label.end());
        if (label.empty()) continue;
        const catalog_entry* e = appendix2_catalog().find(label);
        if (!e) throw error("no catalog entry labeled '" + label + "'");
        steps.push_back(e->config);
    }
    if (steps.empty()) throw error("no steps given");
    return steps;
}

int cmd_trajectory(const trajectory_opts& opts, std::string out_path, std::ostream& out) {
    std::vector<trajectory::trajectory> selected;
    if (!opts.from.empty() || !opts.to.empty()) {
        if (opts.from.empty() || opts.to.empty()) throw error("--from and --to go together");
        const catalog_entry* a = appendix2_catalog().find(opts.from);
        const catalog_entry* b = appendix2_catalog().find(opts.to);
        if (!a || !b) throw error("--from/--to must name catalog labels");
        selected = trajectory::shortest_paths(a->config, b->config,
                                              appendix2_catalog().scenarios(), opts.max_hop);
    } else if (!opts.steps.empty()) {
        selected.push_back(trajectory::make_trajectory("custom", steps_from_labels(opts.steps)));
    } else {
        const std::vector<trajectory::trajectory> named = trajectory::named_trajectories();
        if (opts.named.empty()) {
            selected = named;
        } else {
            for (const std::string& want : opts.named) {
                auto it = std::find_if(named.begin(), named.end(),
                                       [&](const trajectory::trajectory& t) { return t.name == want; });
                if (it == named.end()) throw error("no named trajectory '" + want + "'");
                selected.push_back(*it);
            }
        }
    }

    std::ostringstream text;
    if (opts.format == "json") {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const trajectory::trajectory& t : selected) {
            list.push_back(trajectory::trajectory_to_json(t));
        }
        text << dump_json(list);
    } else {
        for (const trajectory::trajectory& t : selected) print_trajectory(t, text);
    }
    write_output(text.str(), out_path, out);
    return exit_ok;
}

// ------------------------------------------------------------------ classify

int cmd_classify(const std::string& notation_text, const std::string& format,
                 std::string out_path, std::ostream& out, std::ostream& err) {
    const scenario s = parse_or_throw(notation_text, err);
    const trajectory::tier_classification c = trajectory::classify_tier(s);
    std::ostringstream text;
    if (format == "json") {
        text << dump_json(trajectory::classification_to_json(c));
    } else {
        text << "tier: " << tier_name(c.value) << "\n";
        text << "rationale: " << c.rationale << "\n";
        if (c.conflict) text << "warning: duplicated configuration with divergent tiers\n";
    }
    write_output(text.str(), out_path, out);
    return exit_ok;
}

// -------------------------------------------------------------- parse / fmt

int cmd_parse(const std::string& notation_text, const std::string& format, std::string out_path,
              std::ostream& out, std::ostream& err) {
    const notation::parse_result result = notation::parse_scenario(notation_text);
    std::ostringstream text;
    if (format == "json") {
        nlohmann::ordered_json body;
        body["scenario"] = result.ok() ? scenario_to_json(*result.value) : nlohmann::ordered_json();
        body["canonical"] = result.canonical;
        body["diagnostics"] = diagnostics_to_json(result);
        text << dump_json(body);
    } else {
        print_diagnostics(result, err);
        if (result.ok()) {
            text << "key: " << result.value->key() << "\n";
            text << "scenario: "
                 << notation::format_scenario(*result.value, notation::notation_style::flat) << "\n";
            if (!result.canonical) text << "canonical: no\n";
        }
    }
    write_output(text.str(), out_path, out);
    return result.ok() ? exit_ok : exit_error;
}

int cmd_fmt(const std::string& notation_text, const std::string& style_name, bool unicode,
            std::string out_path, std::ostream& out, std::ostream& err) {
    const auto style = notation::style_from_name(style_name);
    if (!style) throw error("unknown notation style '" + style_name + "'");
    const scenario s = parse_or_throw(notation_text, err);
    write_output(notation::format_scenario(s, *style, {unicode}) + "\n", out_path, out);
    return exit_ok;
}

// ------------------------------------------------------------------- catalog

struct catalog_opts {
    bool table1 = false;
    bool filter_status = false;
    bool duplicates = false;
    bool verbatim = false;
    std::string format = "table";
};

struct row_status {
    bool kept = true;
    int stage = 0;
    std::string rule;
};

row_status status_for(const scenario& s, const filters::pipeline_result& result) {
    row_status out;
    const int key = s.key();
    for (const filters::stage_report& r : result.stages) {
        for (const filters::elimination& e : r.eliminations) {
            if (e.subject.key() == key) {
                out.kept = false;
                out.stage = r.stage;
                out.rule = e.rule_name;
                return out;
            }
        }
    }
    return out;
}

int cmd_catalog(const catalog_opts& opts, std::string out_path, std::ostream& out) {
    const catalog& cat = opts.table1 ? table1_catalog() : appendix2_catalog();
    std::optional<filters::pipeline_result> pipeline;
    if (opts.filter_status) {
        pipeline = filters::run_pipeline(filters::pipeline_config::shipped(), enumerate_space());
    }

    std::ostringstream text;
    if (opts.format == "json") {
        nlohmann::ordered_json body;
        body["name"] = cat.name;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const catalog_entry& e : cat.entries) {
            nlohmann::ordered_json item = catalog_entry_to_json(e);
            if (pipeline) {
                const row_status st = status_for(e.config, *pipeline);
                item["filter_status"] = st.kept ? "kept" : "eliminated";
                if (!st.kept) {
                    item["eliminated_at_stage"] = st.stage;
                    item["eliminated_by_rule"] = st.rule;
                }
            }
            rows.push_back(item);
        }
        body["entries"] = rows;
        if (opts.duplicates) {
            nlohmann::ordered_json groups = nlohmann::ordered_json::array();
            for (const auto& group : find_duplicates(cat)) groups.push_back(group);
            body["duplicates"] = groups;
        }
        text << dump_json(body);
    } else {
        text << cat.name << " (" << cat.entries.size() << " entries)\n";
        for (const catalog_entry& e : cat.entries) {
            text << std::left << std::setw(5) << e.label << std::setw(17)
                 << (e.tier_label ? tier_name(*e.tier_label) : "-");
            if (opts.verbatim) {
                text << e.notation;
            } else {
                text << notation::format_scenario(e.config, notation::notation_style::flat);
            }
            if (pipeline) {
                const row_status st = status_for(e.config, *pipeline);
                if (st.kept) {
                    text << "  [kept]";
                } else {
                    text << "  [eliminated at stage " << st.stage << " by " << st.rule << "]";
                }
            }
            text << "\n";
        }
        if (opts.duplicates) {
            const auto groups = find_duplicates(cat);
            text << "duplicate configurations: " << groups.size() << "\n";
            for (const auto& group : groups) {
                text << "  ";
                for (std::size_t i = 0; i < group.size(); ++i) {
                    if (i) text << " = ";
                    text << group[i];
                }
                text << "\n";
            }
        }
    }
    write_output(text.str(), out_path, out);
    return exit_ok;
}

// -------------------------------------------------------------------- export

struct export_opts {
    std::string what = "catalog";
    std::string catalog_name = "appendix2";
    std::string format;
    std::string scenario_text;
    context_opts context;
};

int cmd_export(const export_opts& opts, std::string out_path, std::ostream& out,
               std::ostream& err) {
    std::string format = opts.format;
    std::string text;
    if (opts.what == "space") {
        if (format.empty()) format = "json";
        if (format != "json") throw error("space export supports json");
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const scenario& s : enumerate_space()) list.push_back(scenario_to_json(s));
        text = dump_json(list);
    } else if (opts.what == "catalog") {
        if (format.empty()) format = "json";
        if (format != "json") throw error("catalog export supports json");
        text = dump_json(catalog_to_json(catalog_by_name(opts.catalog_name)));
    } else if (opts.what == "context") {
        if (format.empty()) format = "cxt";
        context_opts copts = opts.context;
        copts.catalog_name = opts.catalog_name;
        const fca::formal_context ctx = load_context(copts);
        if (format == "cxt") {
            text = fca::to_cxt(ctx, copts.catalog_name);
        } else if (format == "csv") {
            text = fca::to_csv(ctx);
        } else if (format == "json") {
            nlohmann::ordered_json body;
            body["objects"] = ctx.objects();
            body["attributes"] = ctx.attributes();
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (std::size_t o = 0; o < ctx.object_count(); ++o) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (std::size_t a = 0; a < ctx.attribute_count(); ++a) {
                    row.push_back(ctx.incidence(o, a));
                }
                rows.push_back(row);
            }
            body["incidence"] = rows;
            text = dump_json(body);
        } else {
            throw error("context export supports cxt, csv or json");
        }
    } else if (opts.what == "lattice") {
        if (format.empty()) format = "dot";
        context_opts copts = opts.context;
        copts.catalog_name = opts.catalog_name;
        const fca::formal_context ctx = load_context(copts);
        const fca::concept_lattice lattice = fca::build_lattice(ctx, fca::all_concepts(ctx));
        if (format == "dot") {
            text = fca::lattice_to_dot(ctx, lattice);
        } else if (format == "json") {
            text = dump_json(fca::lattice_to_json(ctx, lattice));
        } else {
            throw error("lattice export supports dot or json");
        }
    } else if (opts.what == "graph") {
        if (format.empty()) format = "dot";
        if (format != "dot") throw error("graph export supports dot");
        if (opts.scenario_text.empty()) throw error("graph export needs --scenario NOTATION");
        const scenario s = parse_or_throw(opts.scenario_text, err);
        text = to_dot(build_graph(s), s.label ? *s.label : "scenario");
    } else {
        throw error("unknown export target '" + opts.what +
                    "' (use space, catalog, context, lattice or graph)");
    }
    write_output(text, out_path, out);
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"metascen: enumerate, filter and analyze metacognitive learning scenarios"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    app.add_option("--out", out_path, "Write output to this path instead of stdout")
        ->capture_default_str();

    enumerate_opts en;
    CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "List or count the scenario space");
    enumerate_cmd->add_flag("--count", en.count, "Print only the count");
    enumerate_cmd->add_flag("--full", en.full, "List every scenario");
    enumerate_cmd->add_option("--format", en.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    enumerate_cmd->add_option("--style", en.style, "Notation style for listings");
    enumerate_cmd->add_flag("--unicode", en.unicode, "Emit unicode arrows");
    enumerate_cmd->add_option("--topology", en.topology, "Keep only this topology id (1..8)");
    enumerate_cmd->add_option("--internal", en.internal,
                              "Keep only this internal arrangement");
    enumerate_cmd->add_option("--entry", en.entry, "Keep only this entry pattern (P, S, PS)");
    enumerate_cmd->add_option("--exit", en.exit_pattern, "Keep only this exit pattern (P, S, PS)");

    filter_opts fo;
    CLI::App* filter_cmd = app.add_subcommand("filter", "Run the constraint-filter pipeline");
    filter_cmd->add_option("--config", fo.config,
                           "Pipeline config: shipped, strict-rules or a JSON file path");
    filter_cmd->add_option("--only-rule", fo.only_rule, "Run only the rule with this name");
    filter_cmd->add_flag("--strict", fo.strict,
                         "Exit nonzero unless the end state and every reference target match");
    filter_cmd->add_flag("--full", fo.full, "List the surviving scenarios");
    filter_cmd->add_option("--format", fo.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    context_opts lat_ctx;
    std::string lat_format = "dot";
    CLI::App* lattice_cmd = app.add_subcommand("lattice", "Build the concept lattice");
    lattice_cmd->add_option("--catalog", lat_ctx.catalog_name, "appendix2 or table1");
    lattice_cmd->add_option("--context", lat_ctx.context_path, "Load a CXT or CSV context file");
    lattice_cmd->add_flag("--no-derived", lat_ctx.no_derived, "Drop the derived attributes");
    lattice_cmd->add_flag("--no-tiers", lat_ctx.no_tiers, "Drop the tier attributes");
    lattice_cmd->add_flag("--dedup", lat_ctx.dedup, "Clarify the context (merge identical rows)");
    lattice_cmd->add_option("--format", lat_format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));

    implications_opts im;
    CLI::App* implications_cmd =
        app.add_subcommand("implications", "Implication basis, verification and findings");
    implications_cmd->add_option("--catalog", im.context.catalog_name, "appendix2 or table1");
    implications_cmd->add_option("--context", im.context.context_path,
                                 "Load a CXT or CSV context file");
    implications_cmd->add_flag("--no-derived", im.context.no_derived,
                               "Drop the derived attributes");
    implications_cmd->add_flag("--no-tiers", im.context.no_tiers, "Drop the tier attributes");
    implications_cmd->add_flag("--dedup", im.context.dedup, "Clarify the context");
    implications_cmd->add_flag("--basis", im.basis, "Print the canonical implication basis");
    implications_cmd->add_flag("--findings", im.findings,
                               "Verify the documented lattice findings");
    implications_cmd->add_option("--verify", im.verify,
                                 "Verify an implication, e.g. \"tier:expert => sc:OI\"");
    implications_cmd->add_option("--format", im.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    trajectory_opts tr;
    CLI::App* trajectory_cmd =
        app.add_subcommand("trajectory", "Developmental pathways and transition thresholds");
    trajectory_cmd->add_option("--named", tr.named, "Named pathway (repeatable)");
    trajectory_cmd->add_flag("--all", tr.all, "All named pathways (default)");
    trajectory_cmd->add_option("--steps", tr.steps, "Custom pathway as catalog labels: S1,S6,S7");
    trajectory_cmd->add_option("--from", tr.from, "Shortest paths: start label");
    trajectory_cmd->add_option("--to", tr.to, "Shortest paths: target label");
    trajectory_cmd->add_option("--max-hop", tr.max_hop,
                               "Hamming radius per hop for shortest paths");
    trajectory_cmd->add_option("--format", tr.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string classify_text;
    std::string classify_format = "table";
    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a scenario into a tier");
    classify_cmd->add_option("notation", classify_text, "Scenario notation")->required();
    classify_cmd->add_option("--format", classify_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string parse_text;
    std::string parse_format = "table";
    CLI::App* parse_cmd = app.add_subcommand("parse", "Parse notation to a canonical scenario");
    parse_cmd->add_option("notation", parse_text, "Scenario notation")->required();
    parse_cmd->add_option("--format", parse_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string fmt_text;
    std::string fmt_style = "bracketed";
    bool fmt_unicode = false;
    CLI::App* fmt_cmd = app.add_subcommand("fmt", "Reformat scenario notation");
    fmt_cmd->add_option("notation", fmt_text, "Scenario notation")->required();
    fmt_cmd->add_option("--style", fmt_style, "bracketed, flat or topology-short");
    fmt_cmd->add_flag("--unicode", fmt_unicode, "Emit unicode arrows");

    catalog_opts co;
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Print the embedded catalogs");
    catalog_cmd->add_flag("--table1", co.table1, "Print the literature catalog");
    catalog_cmd->add_flag("--appendix2", [](std::int64_t) {}, "Print the priority catalog (default)");
    catalog_cmd->add_flag("--filter-status", co.filter_status,
                          "Mark each row kept/eliminated by the shipped pipeline");
    catalog_cmd->add_flag("--duplicates", co.duplicates, "List duplicate configuration groups");
    catalog_cmd->add_flag("--verbatim", co.verbatim, "Show the frozen source notation");
    catalog_cmd->add_option("--format", co.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    export_opts ex;
    CLI::App* export_cmd = app.add_subcommand("export", "Write artifacts in exchange formats");
    export_cmd->add_option("--what", ex.what, "space, catalog, context, lattice or graph");
    export_cmd->add_option("--catalog", ex.catalog_name, "appendix2 or table1");
    export_cmd->add_option("--format", ex.format, "json, csv, cxt or dot");
    export_cmd->add_option("--scenario", ex.scenario_text, "Scenario notation for graph export");
    export_cmd->add_option("--context", ex.context.context_path, "Load a CXT or CSV context file");
    export_cmd->add_flag("--no-derived", ex.context.no_derived, "Drop the derived attributes");
    export_cmd->add_flag("--no-tiers", ex.context.no_tiers, "Drop the tier attributes");
    export_cmd->add_flag("--dedup", ex.context.dedup, "Clarify the context");

    std::vector<const char*> argv;
    argv.push_back("metascen");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (enumerate_cmd->parsed()) return cmd_enumerate(en, out_path, out);
        if (filter_cmd->parsed()) return cmd_filter(fo, out_path, out);
        if (lattice_cmd->parsed()) return cmd_lattice(lat_ctx, lat_format, out_path, out);
        if (implications_cmd->parsed()) return cmd_implications(im, out_path, out);
        if (trajectory_cmd->parsed()) return cmd_trajectory(tr, out_path, out);
        if (classify_cmd->parsed())
            return cmd_classify(classify_text, classify_format, out_path, out, err);
        if (parse_cmd->parsed()) return cmd_parse(parse_text, parse_format, out_path, out, err);
        if (fmt_cmd->parsed())
            return cmd_fmt(fmt_text, fmt_style, fmt_unicode, out_path, out, err);
        if (catalog_cmd->parsed()) return cmd_catalog(co, out_path, out);
        if (export_cmd->parsed()) return cmd_export(ex, out_path, out, err);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    err << "error: no subcommand given\n";
    return exit_error;
}

}  // namespace metascen::cli
