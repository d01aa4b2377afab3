#include "lstag/tag.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace lstag {

void TagGrammar::add(std::string name, SyntaxTree tree) {
    if (entries_.count(name)) throw Error(ErrorCode::DuplicateName, "tree '" + name + "' defined twice");
    TreeClass cls = tree.tree_class();
    ElementaryTree e{name, std::move(tree), cls};
    entries_.emplace(std::move(name), std::move(e));
}

const ElementaryTree* TagGrammar::find(std::string_view name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

const ElementaryTree& TagGrammar::at(std::string_view name) const {
    if (auto* e = find(name)) return *e;
    throw Error(ErrorCode::UnknownTree, "no tree named '" + std::string(name) + "'");
}

std::string canonical_string(const DerivationTree& d) {
    std::string out = d.name;
    if (d.children.empty()) return out;
    std::vector<const DerivationEdge*> kids;
    for (const auto& e : d.children) kids.push_back(&e);
    std::sort(kids.begin(), kids.end(), [](auto* a, auto* b) { return a->addr < b->addr; });
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ' ';
        out += kids[i]->addr.to_string() + ":" + canonical_string(kids[i]->child);
    }
    out += ')';
    return out;
}

std::size_t operation_count(const DerivationTree& d) {
    std::size_t n = d.children.size();
    for (const auto& e : d.children) n += operation_count(e.child);
    return n;
}

namespace {

void validate_node(const TagGrammar& g, const DerivationTree& d, const std::string& path, Diagnostics& out) {
    const ElementaryTree* parent = g.find(d.name);
    if (!parent) out.push_back({ErrorCode::UnknownTree, path, "no tree named '" + d.name + "'"});
    std::set<GornAddress> seen;
    for (const auto& edge : d.children) {
        const std::string child_path = path + "/" + edge.addr.to_string() + ":" + edge.child.name;
        if (!seen.insert(edge.addr).second)
            out.push_back({ErrorCode::DuplicateEdge, path, "two operations at " + edge.addr.to_string()});
        if (parent) {
            if (!parent->tree.contains(edge.addr)) {
                out.push_back({ErrorCode::EdgeAddressInvalid, path,
                               "'" + d.name + "' has no node at " + edge.addr.to_string()});
            } else if (const ElementaryTree* child = g.find(edge.child.name)) {
                const Node& site = parent->tree.at(edge.addr);
                const bool subst = site.kind == NodeKind::Slot;
                const bool adj = site.kind == NodeKind::Interior;
                if ((subst && child->cls != TreeClass::Initial) || (adj && child->cls != TreeClass::Auxiliary) ||
                    (!subst && !adj)) {
                    out.push_back({ErrorCode::OperationMismatch, path,
                                   std::string(to_string(child->cls)) + " tree '" + child->name + "' cannot attach at " +
                                       edge.addr.to_string()});
                } else if (child->tree.root().label != site.label) {
                    out.push_back({ErrorCode::SymbolMismatch, path,
                                   "'" + child->name + "' has root " + child->tree.root().label + ", site " +
                                       edge.addr.to_string() + " is " + site.label});
                }
            }
        }
        validate_node(g, edge.child, child_path, out);
    }
}

void throw_first(const Diagnostics& diags) {
    if (!diags.empty()) {
        const auto& d = diags.front();
        throw Error(d.code, d.where + ": " + d.message);
    }
}

SyntaxTree replay_node(const TagGrammar& g, const DerivationTree& d) {
    SyntaxTree tree = g.at(d.name).tree;
    // Current position of every pending edge's original site.
    std::vector<GornAddress> sites;
    for (const auto& e : d.children) sites.push_back(e.addr);
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        SyntaxTree child = replay_node(g, d.children[i].child);
        const GornAddress site = sites[i];
        if (tree.at(site).kind == NodeKind::Slot) {
            tree = substitute(tree, site, child);
        } else {
            const GornAddress foot = *child.foot();
            tree = adjoin(tree, site, child);
            for (std::size_t j = i + 1; j < sites.size(); ++j) sites[j] = rebase_address(sites[j], site, foot);
        }
    }
    return tree;
}

}  // namespace

Diagnostics validate_derivation(const TagGrammar& grammar, const DerivationTree& d) {
    Diagnostics out;
    validate_node(grammar, d, d.name, out);
    return out;
}

SyntaxTree replay(const TagGrammar& grammar, const DerivationTree& d) {
    throw_first(validate_derivation(grammar, d));
    return replay_node(grammar, d);
}

std::string_view instance_name(std::string_view token) { return token.substr(0, token.find('#')); }

namespace {

bool is_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) || c == '_' || c == '-' || c == '#' || c == '\'' || c == '.';
}

class ScriptLexer {
public:
    ScriptLexer(std::string_view line, std::size_t base) : line_(line), base_(base) {}

    void ws() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    }
    bool done() {
        ws();
        return pos_ >= line_.size();
    }
    std::string name() {
        ws();
        std::size_t b = pos_;
        while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
        if (b == pos_) fail("expected a tree name");
        return std::string(line_.substr(b, pos_ - b));
    }
    GornAddress address() {
        ws();
        std::size_t b = pos_;
        while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) && line_[pos_] != '~' &&
               line_[pos_] != '<')
            ++pos_;
        auto a = GornAddress::parse(line_.substr(b, pos_ - b));
        if (!a || b == pos_) {
            pos_ = b;
            fail("expected a Gorn address");
        }
        return *a;
    }
    bool accept(std::string_view tok) {
        ws();
        if (line_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure(base_ + pos_, msg); }

private:
    std::string_view line_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

}  // namespace

DerivationScript parse_script(std::string_view text) {
    DerivationScript script;
    std::size_t offset = 0;
    std::size_t line_no = 0;
    while (offset <= text.size()) {
        auto nl = text.find('\n', offset);
        auto line = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
        ++line_no;
        if (auto hash = line.find("# "); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.front() == '#') line = {};
        ScriptLexer lex(line, offset);
        if (!lex.done()) {
            if (lex.accept("start ")) {
                if (!script.start.empty() || !script.steps.empty()) lex.fail("'start' must be the first step");
                script.start = lex.name();
            } else {
                ScriptStep step;
                step.line = line_no;
                step.host = lex.name();
                lex.expect("@");
                step.left = lex.address();
                if (lex.accept("~")) step.right = lex.address();
                lex.expect("<-");
                step.guest = lex.name();
                script.steps.push_back(std::move(step));
            }
            if (!lex.done()) lex.fail("trailing text");
        }
        if (nl == std::string_view::npos) break;
        offset = nl + 1;
    }
    if (script.start.empty() && !script.steps.empty()) script.start = script.steps.front().host;
    return script;
}

std::string print_script(const DerivationScript& script) {
    std::string out = "start " + script.start + "\n";
    for (const auto& s : script.steps) {
        out += s.host + " @ " + s.left.to_string();
        if (s.right) out += " ~ " + s.right->to_string();
        out += " <- " + s.guest + "\n";
    }
    return out;
}

DerivationTree derivation_from_script(const DerivationScript& script) {
    if (script.start.empty()) throw ParseFailure(0, "script names no start tree");
    struct Pending {
        std::string token;
        std::vector<std::pair<GornAddress, std::string>> edges;
    };
    std::map<std::string, Pending> nodes;
    nodes[script.start].token = script.start;
    for (const auto& s : script.steps) {
        const std::string where = "line " + std::to_string(s.line) + ": ";
        if (s.right) throw Error(ErrorCode::ParseError, where + "explicit right sites need a pair grammar");
        auto host = nodes.find(s.host);
        if (host == nodes.end()) throw Error(ErrorCode::ParseError, where + "'" + s.host + "' not introduced yet");
        if (nodes.count(s.guest)) throw Error(ErrorCode::ParseError, where + "'" + s.guest + "' already used");
        host->second.edges.emplace_back(s.left, s.guest);
        nodes[s.guest].token = s.guest;
    }
    std::function<DerivationTree(const std::string&)> build = [&](const std::string& token) {
        DerivationTree d{std::string(instance_name(token)), {}};
        for (const auto& [addr, child] : nodes.at(token).edges) d.children.push_back({addr, build(child)});
        return d;
    };
    return build(script.start);
}

}  // namespace lstag
