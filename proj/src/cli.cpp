#include "lstag/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lstag/engine.hpp"
#include "lstag/export.hpp"
#include "lstag/grammar.hpp"
#include "lstag/stag.hpp"

namespace lstag {

bool color_from_env() {
    const char* v = std::getenv("LSTAG_COLOR");
    return v != nullptr && std::string(v) == "1";
}

namespace {

struct Reporter {
    std::ostream& err;
    bool color;
    bool json;

    void diagnostic(const Diagnostic& d, std::string_view level = "error") const {
        if (json) {
            auto j = to_json(d);
            j["level"] = level;
            err << j.dump() << '\n';
            return;
        }
        if (color) err << (level == "error" ? "\x1b[31m" : "\x1b[33m");
        err << level;
        if (color) err << "\x1b[0m";
        err << ": [" << to_string(d.code) << "] " << d.where << ": " << d.message << '\n';
    }

    void failure(const std::string& message) const {
        if (json) {
            err << nlohmann::json{{"level", "error"}, {"message", message}}.dump() << '\n';
            return;
        }
        err << (color ? "\x1b[31merror\x1b[0m" : "error") << ": " << message << '\n';
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DerivationScript read_script(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_script(text);
    } catch (const ParseFailure& e) {
        auto [line, col] = line_col(text, e.offset());
        throw Error(ErrorCode::ParseError,
                    path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.message());
    }
}

struct Options {
    std::string grammar;
    std::string script;
    std::string format = "text";
    bool json = false;
    bool no_restrictions = false;
    bool strings_only = false;
    long long max_ops = 3;
    long long max_structures = 100000;
};

int cmd_validate(const Options& o, std::ostream& out, const Reporter& rep) {
    const GrammarDocument doc = read_grammar_file(o.grammar);
    const LoadedGrammar g = load_grammar(doc, {!o.no_restrictions});
    for (const auto& d : g.diagnostics) rep.diagnostic(d);
    if (!g.diagnostics.empty()) return kExitInvalid;
    if (o.json)
        out << nlohmann::json{{"status", "ok"},
                              {"trees", doc.trees.size()},
                              {"pairs", doc.pairs.size()},
                              {"lspairs", doc.lspairs.size()}}
                   .dump()
            << '\n';
    else
        out << "ok: " << doc.trees.size() << " trees, " << doc.pairs.size() << " pairs, " << doc.lspairs.size()
            << " lspairs\n";
    return kExitOk;
}

int derive_tag(const Options& o, const TagGrammar& g, const DerivationScript& script, std::ostream& out,
               const Reporter& rep) {
    const DerivationTree d = derivation_from_script(script);
    const Diagnostics found = validate_derivation(g, d);
    for (const auto& diag : found) rep.diagnostic(diag);
    if (!found.empty()) return kExitInvalid;
    const SyntaxTree t = replay(g, d);
    if (o.format == "json") {
        out << nlohmann::json{{"derivation", to_json(d)},
                              {"derived", print_tree(t)},
                              {"yield", yield_string(t, YieldMode::Partial)}}
                   .dump(2)
            << '\n';
    } else if (o.format == "dot") {
        out << dot_tag_derivation(d, t);
    } else {
        out << "derived: " << print_tree(t) << '\n'
            << "yield: " << yield_string(t, YieldMode::Partial) << '\n'
            << "derivation: " << canonical_string(d) << '\n';
    }
    return kExitOk;
}

int derive_stag(const Options& o, const StagGrammar& g, const DerivationScript& script, std::ostream& out) {
    const DerivationTree d = derivation_from_script(script);
    const StagPair p = stag_replay(g, d);
    const DerivationTree r = right_derivation(g, d);
    if (o.format == "json") {
        nlohmann::json links = nlohmann::json::array();
        for (const auto& l : p.links) links.push_back(to_string(l));
        out << nlohmann::json{{"left_derivation", to_json(d)},
                              {"right_derivation", to_json(r)},
                              {"left", print_tree(p.left)},
                              {"right", print_tree(p.right)},
                              {"links", links},
                              {"yield", yield_string(p.left, YieldMode::Partial)}}
                   .dump(2)
            << '\n';
    } else if (o.format == "dot") {
        out << dot_pair_derivation(d, r, p.left, p.right);
    } else {
        out << "left: " << print_tree(p.left) << '\n'
            << "right: " << print_tree(p.right) << '\n'
            << "left yield: " << yield_string(p.left, YieldMode::Partial) << '\n'
            << "links:";
        if (p.links.empty()) out << " none";
        for (const auto& l : p.links) out << ' ' << to_string(l);
        out << '\n'
            << "left derivation: " << canonical_string(d) << '\n'
            << "right derivation: " << canonical_string(r) << '\n';
    }
    return kExitOk;
}

int derive_lstag(const Options& o, const LstagGrammar& g, const DerivationScript& script, std::ostream& out) {
    const DerivedStructure d = run_script(g, script);
    if (o.format == "json")
        out << to_json(d).dump(2) << '\n';
    else if (o.format == "dot")
        out << dot_derived(d);
    else
        out << text_derived(d);
    return kExitOk;
}

int cmd_derive(const Options& o, std::ostream& out, const Reporter& rep) {
    const LoadedGrammar g = load_grammar(read_grammar_file(o.grammar), {!o.no_restrictions});
    for (const auto& d : g.diagnostics) rep.diagnostic(d);
    if (!g.diagnostics.empty()) return kExitInvalid;
    const DerivationScript script = read_script(o.script);
    const auto start = instance_name(script.start);
    try {
        if (g.lstag.find(start)) return derive_lstag(o, g.lstag, script, out);
        if (g.stag.find(start)) return derive_stag(o, g.stag, script, out);
        if (g.tag.find(start)) return derive_tag(o, g.tag, script, out, rep);
    } catch (const ParseFailure&) {
        throw;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        rep.diagnostic({e.code(), o.script, e.message()});
        return kExitInvalid;
    }
    rep.diagnostic({ErrorCode::UnknownTree, o.script, "start '" + std::string(start) + "' is not in the grammar"});
    return kExitInvalid;
}

int cmd_enumerate(const Options& o, std::ostream& out, const Reporter& rep) {
    const LoadedGrammar g = load_grammar(read_grammar_file(o.grammar), {!o.no_restrictions});
    for (const auto& d : g.diagnostics) rep.diagnostic(d, "warning");
    const EnumerationBudget budget{static_cast<std::size_t>(o.max_ops), static_cast<std::size_t>(o.max_structures)};

    std::vector<std::string> strings;
    nlohmann::json rows = nlohmann::json::array();
    std::vector<std::string> lines;
    bool truncated = false;
    if (!g.lstag.empty()) {
        const LstagEnumeration e = enumerate(g.lstag, g.start, budget);
        truncated = e.truncated;
        strings = language_sample(e);
        for (const auto& r : e.results) {
            lines.push_back(r.yield + "\t" + std::to_string(r.operations) + "\t" + r.key);
            const Projections p = derivation_projections(r.structure);
            rows.push_back({{"yield", r.yield},
                            {"complete", r.complete},
                            {"operations", r.operations},
                            {"key", r.key},
                            {"left_derivation", to_json(p.left)},
                            {"right_derivation", to_json(p.right)}});
        }
    } else {
        const TagEnumeration e = enumerate(g.tag, g.start, budget);
        truncated = e.truncated;
        strings = language_sample(e);
        for (const auto& r : e.results) {
            lines.push_back(r.yield + "\t" + std::to_string(r.operations) + "\t" + r.key);
            rows.push_back({{"yield", r.yield},
                            {"complete", r.complete},
                            {"operations", r.operations},
                            {"key", r.key},
                            {"derivation", to_json(r.derivation)}});
        }
    }
    if (truncated)
        rep.diagnostic({ErrorCode::BudgetExceeded, o.grammar,
                        "enumeration stopped at " + std::to_string(budget.max_structures) + " structures"},
                       "warning");
    if (o.format == "json") {
        nlohmann::json j{{"truncated", truncated}};
        if (o.strings_only)
            j["strings"] = strings;
        else
            j["results"] = std::move(rows);
        out << j.dump(2) << '\n';
    } else {
        for (const auto& s : o.strings_only ? strings : lines) out << s << '\n';
    }
    return kExitOk;
}

int cmd_export(const Options& o, std::ostream& out) {
    const GrammarDocument doc = read_grammar_file(o.grammar);
    if (o.format == "json")
        out << grammar_to_json(doc).dump(2) << '\n';
    else if (o.format == "dot")
        out << dot_grammar(doc);
    else
        out << print_grammar(doc);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    CLI::App app{"Tree adjoining, synchronous and link-sharing grammar tool", "lstag"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> formats{"text", "json", "dot"};

    auto* validate = app.add_subcommand("validate", "Load a grammar and run every well-formedness check");
    validate->add_option("grammar", o.grammar, "Grammar file")->required();
    validate->add_flag("--json", o.json, "Diagnostics as JSON lines");
    validate->add_flag("--no-restrictions", o.no_restrictions, "Skip the contiguity restrictions");

    auto* derive = app.add_subcommand("derive", "Replay a derivation script");
    derive->add_option("grammar", o.grammar, "Grammar file")->required();
    derive->add_option("script", o.script, "Derivation script")->required();
    derive->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember(formats));
    derive->add_flag("--json", o.json, "Diagnostics as JSON lines");
    derive->add_flag("--no-restrictions", o.no_restrictions, "Skip the contiguity restrictions");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "List every derivation within a budget");
    enumerate_cmd->add_option("grammar", o.grammar, "Grammar file")->required();
    enumerate_cmd->add_option("--max-ops", o.max_ops, "Most operations per derivation (>= 1)");
    enumerate_cmd->add_option("--max-structures", o.max_structures, "Most derivations to keep (>= 1)");
    enumerate_cmd->add_flag("--strings-only", o.strings_only, "Only the distinct complete strings");
    enumerate_cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    enumerate_cmd->add_flag("--json", o.json, "Diagnostics as JSON lines");
    enumerate_cmd->add_flag("--no-restrictions", o.no_restrictions, "Skip the contiguity restrictions");

    auto* export_cmd = app.add_subcommand("export", "Print a grammar as canonical text, JSON or DOT");
    export_cmd->add_option("grammar", o.grammar, "Grammar file")->required();
    export_cmd->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember(formats));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (o.max_ops < 1 || o.max_structures < 1) {
        err << "error: --max-ops and --max-structures must be at least 1\n";
        return kExitUsage;
    }

    const Reporter rep{err, color, o.json};
    try {
        if (validate->parsed()) return cmd_validate(o, out, rep);
        if (derive->parsed()) return cmd_derive(o, out, rep);
        if (enumerate_cmd->parsed()) return cmd_enumerate(o, out, rep);
        return cmd_export(o, out);
    } catch (const Error& e) {
        rep.failure(e.what());
        return e.code() == ErrorCode::ParseError ? kExitUsage : kExitInvalid;
    } catch (const std::exception& e) {
        rep.failure(e.what());
        return kExitInvalid;
    }
}

}  // namespace lstag
