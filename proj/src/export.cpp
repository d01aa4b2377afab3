#include "lstag/export.hpp"

#include <functional>
#include <sstream>

namespace lstag {

using nlohmann::json;

json to_json(const DerivationTree& d) {
    json children = json::array();
    for (const auto& e : d.children) children.push_back({{"addr", e.addr.to_string()}, {"node", to_json(e.child)}});
    return {{"name", d.name}, {"children", std::move(children)}};
}

json to_json(const DerivationGraph& g) {
    json nodes = json::array(), edges = json::array();
    for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"name", n.name}, {"in_degree", g.in_degree(n.id)}});
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"addr", e.addr.to_string()}, {"kind", to_string(e.kind)}});
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"is_tree", g.is_tree()},
            {"is_acyclic", g.is_acyclic()}};
}

namespace {

json origin_json(const NodeOrigin& o) { return {{"instance", o.instance}, {"addr", o.addr.to_string()}}; }

}  // namespace

json to_json(const DerivedStructure& d) {
    json fragments = json::array();
    for (FragmentId f = 0; f < d.fragments.size(); ++f) {
        json edges = json::array();
        for (const auto& e : d.fragments[f].edges) edges.push_back({{"slot", e.slot.to_string()}, {"child", e.child}});
        fragments.push_back({{"id", f},
                             {"tree", print_tree(d.fragments[f].tree)},
                             {"in_degree", d.in_degree(f)},
                             {"edges", std::move(edges)}});
    }
    json links = json::array();
    for (const auto& g : d.live_links) {
        json right = json::array();
        for (const auto& s : g.right) right.push_back(to_string(s));
        links.push_back({{"left", g.left.to_string()}, {"right", std::move(right)}});
    }
    json history = json::array();
    for (const auto& r : d.history) {
        json hosts = json::array(), sites = json::array();
        for (const auto& h : r.right_hosts) hosts.push_back(origin_json(h));
        for (const auto& s : r.right_sites) sites.push_back(to_string(s));
        history.push_back({{"kind", to_string(r.kind)},
                           {"guest", r.guest},
                           {"guest_name", d.instances.at(r.guest)},
                           {"left_host", origin_json(r.left_host)},
                           {"right_hosts", std::move(hosts)},
                           {"left_site", r.left_site.to_string()},
                           {"right_sites", std::move(sites)}});
    }
    const Projections p = derivation_projections(d);
    return {{"instances", d.instances},
            {"left", {{"tree", print_tree(d.left)}, {"yield", yield_string(d.left, YieldMode::Partial)}}},
            {"right", {{"fragments", std::move(fragments)}, {"unfolded", print_tree(d.unfold_right())}}},
            {"live_links", std::move(links)},
            {"history", std::move(history)},
            {"projections", {{"left", to_json(p.left)}, {"right", to_json(p.right)}}}};
}

json to_json(const Diagnostic& d) {
    return {{"code", to_string(d.code)}, {"where", d.where}, {"message", d.message}};
}

namespace {

json links_json(const std::vector<Link>& links) {
    json out = json::array();
    for (const auto& l : links) out.push_back(to_string(l));
    return out;
}

GornAddress address_from(const json& j) {
    auto a = GornAddress::parse(j.get<std::string>());
    if (!a) throw Error(ErrorCode::ParseError, "bad Gorn address '" + j.get<std::string>() + "'");
    return *a;
}

std::vector<Link> links_from(const json& j) {
    std::vector<Link> out;
    for (const auto& item : j) {
        auto s = item.get<std::string>();
        auto tilde = s.find('~');
        Link l;
        l.left = address_from(json(s.substr(0, tilde)));
        l.right = tilde == std::string::npos ? l.left : address_from(json(s.substr(tilde + 1)));
        out.push_back(std::move(l));
    }
    return out;
}

}  // namespace

json grammar_to_json(const GrammarDocument& doc) {
    json out = json::object();
    if (doc.start) out["start"] = *doc.start;
    json trees = json::array(), pairs = json::array(), lspairs = json::array();
    for (const auto& t : doc.trees) trees.push_back({{"name", t.name}, {"tree", print_tree(t.tree)}});
    for (const auto& p : doc.pairs)
        pairs.push_back({{"name", p.name},
                         {"left", print_tree(p.left)},
                         {"right", print_tree(p.right)},
                         {"links", links_json(p.links)}});
    for (const auto& e : doc.lspairs) {
        json j = {{"name", e.pair.name},
                  {"left", print_tree(e.pair.left)},
                  {"right", print_tree(e.pair.right)},
                  {"delta", links_json(e.pair.delta)},
                  {"phi", links_json(e.pair.phi)}};
        if (e.correspond) {
            json c = json::array();
            for (const auto& [l, r] : e.correspond->pairs) c.push_back({l.to_string(), r.to_string()});
            j["correspond"] = std::move(c);
        }
        if (e.order) j["order"] = *e.order == LinkOrder::Listed ? "listed" : "gorn";
        lspairs.push_back(std::move(j));
    }
    out["trees"] = std::move(trees);
    out["pairs"] = std::move(pairs);
    out["lspairs"] = std::move(lspairs);
    return out;
}

GrammarDocument grammar_from_json(const json& j) {
    GrammarDocument doc;
    if (j.contains("start")) doc.start = j.at("start").get<std::string>();
    for (const auto& t : j.value("trees", json::array()))
        doc.trees.push_back({t.at("name").get<std::string>(), parse_tree(t.at("tree").get<std::string>())});
    for (const auto& p : j.value("pairs", json::array()))
        doc.pairs.push_back({p.at("name").get<std::string>(), parse_tree(p.at("left").get<std::string>()),
                             parse_tree(p.at("right").get<std::string>()), links_from(p.at("links"))});
    for (const auto& p : j.value("lspairs", json::array())) {
        LspairEntry e;
        e.pair = {p.at("name").get<std::string>(), parse_tree(p.at("left").get<std::string>()),
                  parse_tree(p.at("right").get<std::string>()), links_from(p.at("delta")), links_from(p.at("phi"))};
        if (p.contains("correspond")) {
            Correspondence c;
            for (const auto& pr : p.at("correspond")) c.pairs.emplace(address_from(pr.at(0)), address_from(pr.at(1)));
            e.correspond = std::move(c);
        }
        if (p.contains("order")) e.order = p.at("order").get<std::string>() == "listed" ? LinkOrder::Listed : LinkOrder::Gorn;
        doc.lspairs.push_back(std::move(e));
    }
    return doc;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string node_label(const Node& n) {
    switch (n.kind) {
        case NodeKind::Slot: return n.label + "↓";
        case NodeKind::Foot: return n.label + "*";
        default: return n.label;
    }
}

// Emits one tree's nodes and edges with ids `<prefix><index>`; returns the id
// assigned to each address.
std::map<GornAddress, std::string> emit_tree(std::ostream& out, const SyntaxTree& t, const std::string& prefix,
                                             const std::string& indent) {
    std::map<GornAddress, std::string> ids;
    std::size_t i = 0;
    for (const auto& [a, n] : t.nodes()) {
        auto id = prefix + std::to_string(i++);
        out << indent << id << " [label=\"" << escape(node_label(n)) << "\""
            << (n.kind == NodeKind::Terminal ? ", shape=plaintext" : "") << "];\n";
        ids.emplace(a, std::move(id));
    }
    for (const auto& [a, n] : t.nodes())
        if (!a.is_root()) out << indent << ids.at(a.parent()) << " -> " << ids.at(a) << ";\n";
    return ids;
}

void emit_derivation(std::ostream& out, const DerivationTree& d, const std::string& prefix, const std::string& indent) {
    std::size_t counter = 0;
    std::function<std::string(const DerivationTree&)> walk = [&](const DerivationTree& n) {
        auto id = prefix + std::to_string(counter++);
        out << indent << id << " [label=\"" << escape(n.name) << "\"];\n";
        for (const auto& e : n.children) {
            auto child = walk(e.child);
            out << indent << id << " -> " << child << " [label=\"" << e.addr.to_string() << "\"];\n";
        }
        return id;
    };
    walk(d);
}

}  // namespace

std::string dot_tree(const SyntaxTree& t, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n  node [shape=box];\n";
    emit_tree(out, t, "n", "  ");
    out << "}\n";
    return out.str();
}

std::string dot_tag_derivation(const DerivationTree& d, const SyntaxTree& derived) {
    std::ostringstream out;
    out << "digraph derivation {\n  node [shape=box];\n";
    out << "  subgraph cluster_derivation {\n    label=\"derivation tree\";\n";
    emit_derivation(out, d, "d", "    ");
    out << "  }\n  subgraph cluster_derived {\n    label=\"derived tree\";\n";
    emit_tree(out, derived, "t", "    ");
    out << "  }\n}\n";
    return out.str();
}

std::string dot_derived(const DerivedStructure& d) {
    std::ostringstream out;
    out << "digraph derived {\n  node [shape=box];\n";
    out << "  subgraph cluster_left {\n    label=\"left tree\";\n";
    emit_tree(out, d.left, "l", "    ");
    out << "  }\n  subgraph cluster_right {\n    label=\"right DAG\";\n";
    std::vector<std::map<GornAddress, std::string>> ids;
    for (FragmentId f = 0; f < d.fragments.size(); ++f)
        ids.push_back(emit_tree(out, d.fragments[f].tree, "f" + std::to_string(f) + "n", "    "));
    for (FragmentId f = 0; f < d.fragments.size(); ++f)
        for (const auto& e : d.fragments[f].edges)
            out << "    " << ids[f].at(e.slot) << " -> " << ids[e.child].at(GornAddress{})
                << " [style=dashed, label=\"" << e.slot.to_string() << "\"];\n";
    const Projections p = derivation_projections(d);
    out << "  }\n  subgraph cluster_dleft {\n    label=\"left derivation\";\n";
    emit_derivation(out, p.left, "dl", "    ");
    out << "  }\n  subgraph cluster_dright {\n    label=\"right derivation\";\n";
    for (const auto& n : p.right.nodes)
        out << "    dr" << n.id << " [label=\"" << escape(n.name) << "\"];\n";
    for (const auto& e : p.right.edges)
        out << "    dr" << e.from << " -> dr" << e.to << " [label=\"" << e.addr.to_string() << "\"];\n";
    out << "  }\n}\n";
    return out.str();
}

std::string dot_pair_derivation(const DerivationTree& left_derivation, const DerivationTree& right_derivation,
                                const SyntaxTree& left, const SyntaxTree& right) {
    std::ostringstream out;
    out << "digraph derivation {\n  node [shape=box];\n";
    out << "  subgraph cluster_dleft {\n    label=\"left derivation\";\n";
    emit_derivation(out, left_derivation, "dl", "    ");
    out << "  }\n  subgraph cluster_dright {\n    label=\"right derivation\";\n";
    emit_derivation(out, right_derivation, "dr", "    ");
    out << "  }\n  subgraph cluster_left {\n    label=\"left tree\";\n";
    emit_tree(out, left, "l", "    ");
    out << "  }\n  subgraph cluster_right {\n    label=\"right tree\";\n";
    emit_tree(out, right, "r", "    ");
    out << "  }\n}\n";
    return out.str();
}

std::string dot_grammar(const GrammarDocument& doc) {
    std::ostringstream out;
    out << "digraph grammar {\n  node [shape=box];\n";
    std::size_t k = 0;
    auto cluster = [&](const std::string& label, const SyntaxTree& t) {
        const auto id = "g" + std::to_string(k++);
        out << "  subgraph cluster_" << id << " {\n    label=\"" << escape(label) << "\";\n";
        emit_tree(out, t, id + "n", "    ");
        out << "  }\n";
    };
    for (const auto& t : doc.trees) cluster(t.name, t.tree);
    for (const auto& p : doc.pairs) {
        cluster(p.name + " (left)", p.left);
        cluster(p.name + " (right)", p.right);
    }
    for (const auto& e : doc.lspairs) {
        cluster(e.pair.name + " (left)", e.pair.left);
        cluster(e.pair.name + " (right)", e.pair.right);
    }
    out << "}\n";
    return out.str();
}

std::string text_derived(const DerivedStructure& d) {
    std::ostringstream out;
    out << "left: " << print_tree(d.left) << '\n';
    out << "left yield: " << yield_string(d.left, YieldMode::Partial) << '\n';
    out << "right fragments:\n";
    for (FragmentId f = 0; f < d.fragments.size(); ++f) {
        out << "  f" << f << " (in-degree " << d.in_degree(f) << "): " << print_tree(d.fragments[f].tree) << '\n';
        for (const auto& e : d.fragments[f].edges) out << "    " << e.slot << " -> f" << e.child << '\n';
    }
    out << "live links:";
    if (d.live_links.empty()) out << " none";
    for (const auto& g : d.live_links) out << ' ' << to_string(g);
    out << '\n';
    const Projections p = derivation_projections(d);
    out << "left derivation: " << canonical_string(p.left) << '\n';
    out << "right derivation:\n";
    for (const auto& e : p.right.edges)
        out << "  " << p.right.nodes[e.from].name << " @" << e.addr << " -> " << p.right.nodes[e.to].name << " ("
            << to_string(e.kind) << ")\n";
    return out.str();
}

}  // namespace lstag
