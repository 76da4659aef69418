#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metascen/catalog.hpp"
#include "metascen/fca.hpp"
#include "metascen/filters.hpp"
#include "metascen/notation.hpp"
#include "metascen/serialize.hpp"
#include "metascen/trajectory.hpp"

namespace py = pybind11;
using namespace metascen;

namespace {

py::object json_to_py(const ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

scenario parse_strict(const std::string& text) {
    const notation::parse_result r = notation::parse_scenario(text);
    if (!r.ok()) {
        std::string message = "cannot parse scenario";
        for (const auto& d : r.diagnostics) {
            if (d.level == notation::severity::error) {
                message += ": " + d.message;
                break;
            }
        }
        throw py::value_error(message);
    }
    return *r.value;
}

const catalog& catalog_by_name(const std::string& name) {
    if (name == "appendix2") return appendix2_catalog();
    if (name == "table1") return table1_catalog();
    throw py::value_error("unknown catalog '" + name + "' (use appendix2 or table1)");
}

fca::formal_context context_for(const std::string& catalog_name, bool derived, bool tiers) {
    fca::context_schema schema;
    schema.derived = derived;
    schema.tiers = tiers;
    return fca::build_context(catalog_by_name(catalog_name), schema);
}

filters::pipeline_config config_by_name(const std::string& name) {
    if (name == "shipped") return filters::pipeline_config::shipped();
    if (name == "strict-rules") return filters::pipeline_config::strict_rules();
    throw py::value_error("unknown pipeline config '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_metascen_core, m) {
    m.doc() = "Scenario taxonomy toolkit: enumeration, notation, filtering, "
              "concept lattices and developmental trajectories";

    py::class_<scenario>(m, "Scenario")
        .def(py::init([](const std::string& text) { return parse_strict(text); }),
             py::arg("notation"))
        .def_static("from_key", &scenario::from_key, py::arg("key"))
        .def_property_readonly("key", &scenario::key)
        .def_property_readonly("label",
                               [](const scenario& s) { return s.label ? py::cast(*s.label) : py::none(); })
        .def_property_readonly("entry",
                               [](const scenario& s) {
                                   std::vector<std::string> out;
                                   if (s.entry.has_p()) out.emplace_back("P");
                                   if (s.entry.has_s()) out.emplace_back("S");
                                   return out;
                               })
        .def_property_readonly("exit",
                               [](const scenario& s) {
                                   std::vector<std::string> out;
                                   if (s.exit.has_p()) out.emplace_back("P");
                                   if (s.exit.has_s()) out.emplace_back("S");
                                   return out;
                               })
        .def_property_readonly("internal",
                               [](const scenario& s) { return std::string(arrangement_name(s.internal)); })
        .def_property_readonly("shortcuts",
                               [](const scenario& s) {
                                   std::vector<std::string> out;
                                   for (shortcut sc : s.shortcuts.members()) {
                                       out.emplace_back(shortcut_name(sc));
                                   }
                                   return out;
                               })
        .def_property_readonly("topology", [](const scenario& s) { return topology_id(s.shortcuts); })
        .def_property_readonly("attributes",
                               [](const scenario& s) {
                                   std::vector<std::string> out;
                                   for (std::string_view n : attributes_of(s).set_names()) {
                                       out.emplace_back(n);
                                   }
                                   return out;
                               })
        .def("format",
             [](const scenario& s, const std::string& style, bool unicode) {
                 auto parsed = notation::style_from_name(style);
                 if (!parsed) throw py::value_error("unknown style '" + style + "'");
                 return notation::format_scenario(s, *parsed, {unicode});
             },
             py::arg("style") = "flat", py::arg("unicode") = false)
        .def("__eq__",
             [](const scenario& a, const scenario& b) { return same_configuration(a, b); })
        .def("__hash__", [](const scenario& s) { return s.key(); })
        .def("__repr__", [](const scenario& s) {
            return "Scenario(\"" +
                   notation::format_scenario(s, notation::notation_style::flat) + "\")";
        });

    m.def("parse", [](const std::string& text) {
        const notation::parse_result r = notation::parse_scenario(text);
        py::dict out;
        out["scenario"] = r.ok() ? py::cast(*r.value) : py::none();
        out["canonical"] = r.canonical;
        py::list diagnostics;
        for (const auto& d : r.diagnostics) {
            py::dict item;
            item["severity"] = d.level == notation::severity::error ? "error" : "warning";
            item["code"] = std::string(notation::diagnostic_code_name(d.code));
            item["offset"] = d.offset;
            item["length"] = d.length;
            item["message"] = d.message;
            diagnostics.append(item);
        }
        out["diagnostics"] = diagnostics;
        return out;
    }, py::arg("notation"), "Parse scenario notation; returns scenario plus diagnostics");

    m.def("enumerate_space", &enumerate_space, "All 216 scenarios in canonical order");

    m.def("catalog",
          [](const std::string& name) { return json_to_py(catalog_to_json(catalog_by_name(name))); },
          py::arg("name") = "appendix2", "Catalog rows as dictionaries");

    m.def("catalog_scenarios",
          [](const std::string& name) { return catalog_by_name(name).scenarios(); },
          py::arg("name") = "appendix2");

    m.def("find_duplicates",
          [](const std::string& name) { return find_duplicates(catalog_by_name(name)); },
          py::arg("name") = "appendix2", "Label groups sharing one configuration");

    m.def("run_pipeline",
          [](const std::string& config) {
              const filters::pipeline_config cfg = config_by_name(config);
              return json_to_py(
                  filters::pipeline_result_to_json(cfg, filters::run_pipeline(cfg, enumerate_space())));
          },
          py::arg("config") = "shipped", "Run the filter pipeline over the full space");

    m.def("concepts",
          [](const std::string& catalog_name, bool derived, bool tiers) {
              const fca::formal_context ctx = context_for(catalog_name, derived, tiers);
              py::list out;
              for (const fca::formal_concept& c : fca::all_concepts(ctx)) {
                  out.append(json_to_py(fca::concept_to_json(ctx, c)));
              }
              return out;
          },
          py::arg("catalog") = "appendix2", py::arg("derived") = true, py::arg("tiers") = true,
          "All formal concepts of the catalog context");

    m.def("lattice",
          [](const std::string& catalog_name, bool derived, bool tiers) {
              const fca::formal_context ctx = context_for(catalog_name, derived, tiers);
              return json_to_py(
                  fca::lattice_to_json(ctx, fca::build_lattice(ctx, fca::all_concepts(ctx))));
          },
          py::arg("catalog") = "appendix2", py::arg("derived") = true, py::arg("tiers") = true);

    m.def("implication_basis",
          [](const std::string& catalog_name, bool derived, bool tiers) {
              const fca::formal_context ctx = context_for(catalog_name, derived, tiers);
              std::vector<std::string> out;
              for (const fca::implication& imp : fca::implication_basis(ctx)) {
                  out.push_back(fca::implication_to_string(ctx, imp));
              }
              return out;
          },
          py::arg("catalog") = "appendix2", py::arg("derived") = true, py::arg("tiers") = true);

    m.def("verify_implication",
          [](const std::string& text, const std::string& catalog_name,
             const std::vector<std::string>& exclude_objects) {
              fca::formal_context ctx = context_for(catalog_name, true, true);
              for (const std::string& name : exclude_objects) {
                  ctx = ctx.without_object(name);
              }
              const fca::verification v =
                  fca::verify_implication(ctx, fca::parse_implication(ctx, text));
              py::dict out;
              out["holds"] = v.holds;
              out["counterexamples"] = v.counterexamples;
              return out;
          },
          py::arg("implication"), py::arg("catalog") = "appendix2",
          py::arg("exclude_objects") = std::vector<std::string>{},
          "Check an attribute implication such as 'tier:expert => sc:OI, sc:FI'");

    m.def("named_trajectories", [] {
        py::list out;
        for (const trajectory::trajectory& t : trajectory::named_trajectories()) {
            out.append(json_to_py(trajectory::trajectory_to_json(t)));
        }
        return out;
    });

    m.def("classify",
          [](const std::string& text) {
              return json_to_py(
                  trajectory::classification_to_json(trajectory::classify_tier(parse_strict(text))));
          },
          py::arg("notation"), "Classify a scenario into a developmental tier");

    m.def("delta",
          [](const scenario& a, const scenario& b) {
              return json_to_py(trajectory::delta_to_json(trajectory::attribute_delta(a, b)));
          },
          py::arg("a"), py::arg("b"));

    m.def("hamming_distance", &trajectory::hamming_distance, py::arg("a"), py::arg("b"));

    m.def("topology_shortcuts", [](int id) {
        std::vector<std::string> out;
        for (shortcut sc : topology_shortcuts(id).members()) out.emplace_back(shortcut_name(sc));
        return out;
    }, py::arg("id"));

    py::register_exception<metascen::error>(m, "MetascenError");
}
