#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lstag/engine.hpp"
#include "lstag/export.hpp"
#include "lstag/grammar.hpp"

namespace py = pybind11;
using namespace lstag;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

GornAddress address(const std::string& text) {
    auto a = GornAddress::parse(text);
    if (!a) throw Error(ErrorCode::ParseError, "bad Gorn address '" + text + "'");
    return *a;
}

py::list diagnostics(const Diagnostics& ds) {
    py::list out;
    for (const auto& d : ds) out.append(to_py(to_json(d)));
    return out;
}

std::string_view kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Interior: return "interior";
        case NodeKind::Slot: return "slot";
        case NodeKind::Foot: return "foot";
        case NodeKind::Terminal: return "terminal";
    }
    return "";
}

EnumerationBudget budget(std::size_t max_ops, std::size_t max_structures) {
    EnumerationBudget b{max_ops, max_structures};
    check_budget(b);
    return b;
}

struct Grammar {
    GrammarDocument doc;
    LoadedGrammar loaded;

    Grammar(GrammarDocument d, bool restrictions) : doc(std::move(d)), loaded(load_grammar(doc, {restrictions})) {}

    bool is_lstag() const { return !loaded.lstag.empty(); }

    py::object derive(const std::string& script_text) const {
        const DerivationScript s = parse_script(script_text);
        const auto start = instance_name(s.start);
        if (loaded.lstag.find(start)) return to_py(to_json(run_script(loaded.lstag, s)));
        if (loaded.tag.find(start)) {
            const DerivationTree d = derivation_from_script(s);
            const SyntaxTree t = replay(loaded.tag, d);
            return to_py({{"derivation", to_json(d)},
                          {"derived", print_tree(t)},
                          {"yield", yield_string(t, YieldMode::Partial)}});
        }
        if (loaded.stag.find(start)) {
            const DerivationTree d = derivation_from_script(s);
            const StagPair p = stag_replay(loaded.stag, d);
            return to_py({{"left_derivation", to_json(d)},
                          {"right_derivation", to_json(right_derivation(loaded.stag, d))},
                          {"left", print_tree(p.left)},
                          {"right", print_tree(p.right)},
                          {"yield", yield_string(p.left, YieldMode::Partial)}});
        }
        throw Error(ErrorCode::UnknownTree, "start '" + std::string(start) + "' is not in the grammar");
    }

    std::string derive_dot(const std::string& script_text) const {
        const DerivationScript s = parse_script(script_text);
        const auto start = instance_name(s.start);
        if (loaded.lstag.find(start)) return dot_derived(run_script(loaded.lstag, s));
        const DerivationTree d = derivation_from_script(s);
        if (loaded.stag.find(start)) {
            const StagPair p = stag_replay(loaded.stag, d);
            return dot_pair_derivation(d, right_derivation(loaded.stag, d), p.left, p.right);
        }
        return dot_tag_derivation(d, replay(loaded.tag, d));
    }

    py::dict enumerate_all(std::size_t max_ops, std::size_t max_structures) const {
        py::list rows;
        bool truncated = false;
        auto row = [](const auto& r) {
            py::dict d;
            d["yield"] = r.yield;
            d["complete"] = r.complete;
            d["operations"] = r.operations;
            d["key"] = r.key;
            return d;
        };
        if (is_lstag()) {
            const auto e = enumerate(loaded.lstag, loaded.start, budget(max_ops, max_structures));
            truncated = e.truncated;
            for (const auto& r : e.results) rows.append(row(r));
        } else {
            const auto e = enumerate(loaded.tag, loaded.start, budget(max_ops, max_structures));
            truncated = e.truncated;
            for (const auto& r : e.results) rows.append(row(r));
        }
        py::dict out;
        out["results"] = rows;
        out["truncated"] = truncated;
        return out;
    }

    std::vector<std::string> sample(std::size_t max_ops, std::size_t max_structures) const {
        if (is_lstag()) return language_sample(loaded.lstag, loaded.start, budget(max_ops, max_structures));
        return language_sample(loaded.tag, loaded.start, budget(max_ops, max_structures));
    }
};

}  // namespace

PYBIND11_MODULE(_lstag, m) {
    m.doc() = "Tree adjoining, synchronous and link-sharing grammars";

    static py::exception<Error> error(m, "LstagError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseFailure& e) {
            py::object exc = py::handle(error.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("offset") = e.offset();
            PyErr_SetObject(error.ptr(), exc.ptr());
        } catch (const Error& e) {
            py::object exc = py::handle(error.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<SyntaxTree>(m, "Tree")
        .def(py::init([](const std::string& text) { return parse_tree(text); }), py::arg("text"))
        .def("__str__", [](const SyntaxTree& t) { return print_tree(t); })
        .def("__repr__", [](const SyntaxTree& t) { return "Tree('" + print_tree(t) + "')"; })
        .def("__eq__", [](const SyntaxTree& a, const SyntaxTree& b) { return a == b; })
        .def("__len__", &SyntaxTree::size)
        .def(
            "yield_",
            [](const SyntaxTree& t, bool partial) {
                return yield_string(t, partial ? YieldMode::Partial : YieldMode::Strict);
            },
            py::arg("partial") = false)
        .def("nodes",
             [](const SyntaxTree& t) {
                 std::vector<std::tuple<std::string, std::string, std::string>> out;
                 for (const auto& [a, n] : t.nodes()) out.emplace_back(a.to_string(), kind_name(n.kind), n.label);
                 return out;
             })
        .def_property_readonly("is_auxiliary",
                               [](const SyntaxTree& t) { return t.tree_class() == TreeClass::Auxiliary; })
        .def_property_readonly("foot",
                               [](const SyntaxTree& t) -> std::optional<std::string> {
                                   auto f = t.foot();
                                   if (!f) return std::nullopt;
                                   return f->to_string();
                               })
        .def(
            "substitute",
            [](const SyntaxTree& t, const std::string& at, const SyntaxTree& filler) {
                return substitute(t, address(at), filler);
            },
            py::arg("at"), py::arg("filler"))
        .def(
            "adjoin",
            [](const SyntaxTree& t, const std::string& at, const SyntaxTree& aux) {
                return adjoin(t, address(at), aux);
            },
            py::arg("at"), py::arg("aux"))
        .def("to_dot", [](const SyntaxTree& t) { return dot_tree(t); });

    m.def(
        "rebase_address",
        [](const std::string& orig, const std::string& site, const std::string& foot) {
            return rebase_address(address(orig), address(site), address(foot)).to_string();
        },
        py::arg("orig"), py::arg("site"), py::arg("foot"),
        "Where a node of the target lands after adjoining at `site` an auxiliary tree whose foot is `foot`.");

    py::class_<Grammar>(m, "Grammar")
        .def_static(
            "load",
            [](const std::string& path, bool restrictions) { return Grammar(read_grammar_file(path), restrictions); },
            py::arg("path"), py::arg("restrictions") = true)
        .def_static(
            "parse",
            [](const std::string& text, bool restrictions) { return Grammar(parse_grammar(text), restrictions); },
            py::arg("text"), py::arg("restrictions") = true)
        .def_property_readonly("start", [](const Grammar& g) { return g.loaded.start; })
        .def_property_readonly("diagnostics", [](const Grammar& g) { return diagnostics(g.loaded.diagnostics); })
        .def_property_readonly("rejected", [](const Grammar& g) { return g.loaded.rejected; })
        .def_property_readonly("names",
                               [](const Grammar& g) {
                                   std::vector<std::string> out;
                                   for (const auto& [n, e] : g.loaded.tag.entries()) out.push_back(n);
                                   for (const auto& [n, p] : g.loaded.stag.pairs()) out.push_back(n);
                                   for (const auto& [n, p] : g.loaded.lstag.pairs()) out.push_back(n);
                                   return out;
                               })
        .def("derive", &Grammar::derive, py::arg("script"), "Run a derivation script; returns the JSON result.")
        .def("derive_dot", &Grammar::derive_dot, py::arg("script"))
        .def("enumerate", &Grammar::enumerate_all, py::arg("max_ops") = 3, py::arg("max_structures") = 100000)
        .def("language_sample", &Grammar::sample, py::arg("max_ops") = 3, py::arg("max_structures") = 100000)
        .def("to_json", [](const Grammar& g) { return to_py(grammar_to_json(g.doc)); })
        .def("__str__", [](const Grammar& g) { return print_grammar(g.doc); });

    m.def(
        "validate",
        [](const std::string& path, bool restrictions) {
            return diagnostics(load_grammar(read_grammar_file(path), {restrictions}).diagnostics);
        },
        py::arg("path"), py::arg("restrictions") = true);
}
