#include "lstag/tree.hpp"

#include <cctype>
#include <iterator>

namespace lstag {

std::string_view to_string(TreeClass c) { return c == TreeClass::Initial ? "initial" : "auxiliary"; }

SyntaxTree::SyntaxTree() : SyntaxTree(NodeMap{{GornAddress{}, Node::interior("S")}}) {}

SyntaxTree::SyntaxTree(NodeMap nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty() || !nodes_.begin()->first.is_root())
        throw Error(ErrorCode::MalformedTree, "tree has no root");
    if (nodes_.begin()->second.kind != NodeKind::Interior)
        throw Error(ErrorCode::MalformedTree, "root must be an interior node");
    for (const auto& [addr, node] : nodes_) {
        if (node.kind == NodeKind::Foot) {
            if (foot_) throw Error(ErrorCode::MalformedTree, "more than one foot node");
            foot_ = addr;
        }
        if (addr.is_root()) continue;
        auto parent = nodes_.find(addr.parent());
        if (parent == nodes_.end())
            throw Error(ErrorCode::MalformedTree, "address " + addr.to_string() + " has no parent");
        if (parent->second.is_leaf_kind())
            throw Error(ErrorCode::MalformedTree, "leaf node at " + parent->first.to_string() + " has children");
        if (addr.last() > 1 && !nodes_.count(addr.parent().child(addr.last() - 1)))
            throw Error(ErrorCode::MalformedTree, "address " + addr.to_string() + " has a missing left sibling");
    }
}

const Node& SyntaxTree::at(const GornAddress& a) const {
    auto it = nodes_.find(a);
    if (it == nodes_.end()) throw Error(ErrorCode::AddressNotFound, "no node at " + a.to_string());
    return it->second;
}

std::uint32_t SyntaxTree::child_count(const GornAddress& a) const {
    std::uint32_t k = 0;
    while (nodes_.count(a.child(k + 1))) ++k;
    return k;
}

std::vector<GornAddress> SyntaxTree::children(const GornAddress& a) const {
    std::vector<GornAddress> out;
    for (std::uint32_t k = 1;; ++k) {
        auto c = a.child(k);
        if (!nodes_.count(c)) break;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<GornAddress> SyntaxTree::frontier() const {
    // Map order is pre-order; a node is a leaf iff its successor does not
    // extend it.
    std::vector<GornAddress> out;
    for (auto it = nodes_.begin(); it != nodes_.end(); ++it) {
        auto next = std::next(it);
        if (next == nodes_.end() || !it->first.is_strict_prefix_of(next->first)) out.push_back(it->first);
    }
    return out;
}

TreeClass SyntaxTree::tree_class() const {
    if (!foot_) return TreeClass::Initial;
    if (nodes_.at(*foot_).label != root().label)
        throw Error(ErrorCode::MalformedTree, "foot symbol " + nodes_.at(*foot_).label + " differs from root symbol " +
                                                  root().label);
    return TreeClass::Auxiliary;
}

const Node& node_at(const SyntaxTree& tree, const GornAddress& addr) { return tree.at(addr); }

Composition substitute_traced(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& filler) {
    const Node& slot = target.at(addr);
    if (slot.kind != NodeKind::Slot) throw Error(ErrorCode::NotASlot, "node at " + addr.to_string() + " is not a slot");
    if (filler.tree_class() != TreeClass::Initial)
        throw Error(ErrorCode::ClassMismatch, "substitution needs an initial tree");
    if (filler.root().label != slot.label)
        throw Error(ErrorCode::SymbolMismatch,
                    "slot " + slot.label + " at " + addr.to_string() + " cannot take " + filler.root().label);

    Composition out;
    SyntaxTree::NodeMap nodes;
    for (const auto& [a, n] : target.nodes()) {
        if (a == addr) continue;
        nodes.emplace(a, n);
        out.host.emplace(a, a);
    }
    for (const auto& [p, n] : filler.nodes()) {
        auto placed = addr.concat(p);
        nodes.emplace(placed, n);
        out.guest.emplace(p, std::move(placed));
    }
    out.tree = SyntaxTree(std::move(nodes));
    return out;
}

Composition adjoin_traced(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& aux) {
    const Node& site = target.at(addr);
    if (site.kind != NodeKind::Interior)
        throw Error(ErrorCode::NotInterior, "node at " + addr.to_string() + " is not interior");
    if (aux.tree_class() != TreeClass::Auxiliary)
        throw Error(ErrorCode::ClassMismatch, "adjunction needs an auxiliary tree");
    if (aux.root().label != site.label)
        throw Error(ErrorCode::SymbolMismatch,
                    "site " + site.label + " at " + addr.to_string() + " cannot take " + aux.root().label);

    const GornAddress foot = *aux.foot();
    Composition out;
    SyntaxTree::NodeMap nodes;
    for (const auto& [a, n] : target.nodes()) {
        auto placed = rebase_address(a, addr, foot);
        nodes.emplace(placed, n);
        out.host.emplace(a, std::move(placed));
    }
    for (const auto& [p, n] : aux.nodes()) {
        if (p == foot) continue;
        auto placed = addr.concat(p);
        nodes.emplace(placed, n);
        out.guest.emplace(p, std::move(placed));
    }
    out.tree = SyntaxTree(std::move(nodes));
    return out;
}

bool is_substitution_site(const SyntaxTree& host, const GornAddress& site) {
    const Node& n = host.at(site);
    if (n.kind == NodeKind::Slot) return true;
    if (n.kind == NodeKind::Interior) return false;
    throw Error(ErrorCode::OperationMismatch, "no operation applies at the " +
                                                  std::string(n.kind == NodeKind::Foot ? "foot" : "terminal") +
                                                  " node " + site.to_string());
}

std::vector<std::string> yield_tokens(const SyntaxTree& tree, YieldMode mode) {
    std::vector<std::string> out;
    for (const auto& a : tree.frontier()) {
        const Node& n = tree.at(a);
        switch (n.kind) {
            case NodeKind::Terminal: out.push_back(n.label); break;
            case NodeKind::Slot:
            case NodeKind::Foot:
                if (mode == YieldMode::Strict)
                    throw Error(ErrorCode::IncompleteTree, "open " + std::string(n.kind == NodeKind::Slot ? "slot" : "foot") +
                                                               " " + n.label + " at " + a.to_string());
                out.push_back("⟨" + n.label + (n.kind == NodeKind::Slot ? "↓" : "*") + "⟩");
                break;
            case NodeKind::Interior: break;
        }
    }
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

std::string yield_string(const SyntaxTree& tree, YieldMode mode) { return join_tokens(yield_tokens(tree, mode)); }

namespace detail {

bool is_symbol_char(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) return true;
    switch (c) {
        case '_': case '-': case '\'': case '$': case '.': case '+': case '/': case '&': case '^': case '|': case '?':
            return true;
        default: return false;
    }
}

std::string quote_terminal(std::string_view token) {
    std::string out = "\"";
    for (char c : token) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

namespace {

void print_node(const SyntaxTree& tree, const GornAddress& a, std::string& out) {
    const Node& n = tree.at(a);
    switch (n.kind) {
        case NodeKind::Terminal: out += detail::quote_terminal(n.label); return;
        case NodeKind::Slot: out += n.label + "!"; return;
        case NodeKind::Foot: out += n.label + "*"; return;
        case NodeKind::Interior: break;
    }
    out += n.label;
    auto kids = tree.children(a);
    if (kids.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ' ';
        print_node(tree, kids[i], out);
    }
    out += ')';
}

class TreeParser {
public:
    TreeParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

    SyntaxTree parse() {
        SyntaxTree::NodeMap nodes;
        std::size_t start = skip_ws();
        node(GornAddress{}, nodes);
        try {
            return SyntaxTree(std::move(nodes));
        } catch (const Error& e) {
            throw ParseFailure(start, e.what());
        }
    }

    std::size_t pos() const { return pos_; }

private:
    std::size_t skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure(pos_, msg); }

    void node(const GornAddress& at, SyntaxTree::NodeMap& nodes) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of tree");
        if (text_[pos_] == '"') {
            nodes.emplace(at, Node::terminal(quoted()));
            return;
        }
        std::size_t begin = pos_;
        while (pos_ < text_.size() && detail::is_symbol_char(text_[pos_])) ++pos_;
        if (begin == pos_) fail(std::string("expected a symbol or a quoted terminal, found '") + text_[pos_] + "'");
        std::string label(text_.substr(begin, pos_ - begin));
        if (pos_ < text_.size() && text_[pos_] == '!') {
            ++pos_;
            nodes.emplace(at, Node::slot(std::move(label)));
            return;
        }
        if (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            nodes.emplace(at, Node::foot(std::move(label)));
            return;
        }
        nodes.emplace(at, Node::interior(std::move(label)));
        if (pos_ >= text_.size() || text_[pos_] != '(') return;
        ++pos_;
        std::uint32_t k = 0;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated child list");
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            node(at.child(++k), nodes);
        }
        if (k == 0) fail("empty child list");
    }

    std::string quoted() {
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated terminal");
            char c = text_[pos_++];
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("dangling escape");
                c = text_[pos_++];
            }
            out += c;
        }
        return out;
    }

    std::string_view text_;
    std::size_t pos_;
};

}  // namespace

std::string print_tree(const SyntaxTree& tree) {
    std::string out;
    print_node(tree, GornAddress{}, out);
    return out;
}

SyntaxTree detail::parse_tree_prefix(std::string_view text, std::size_t& pos) {
    TreeParser p(text, pos);
    auto tree = p.parse();
    pos = p.pos();
    return tree;
}

SyntaxTree parse_tree(std::string_view text) {
    std::size_t pos = 0;
    auto tree = detail::parse_tree_prefix(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseFailure(pos, "trailing input after tree");
    return tree;
}

}  // namespace lstag
