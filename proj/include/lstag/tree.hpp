#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lstag/errors.hpp"
#include "lstag/gorn.hpp"

namespace lstag {

enum class NodeKind { Interior, Slot, Foot, Terminal };

// A node carries a nonterminal symbol (Interior, Slot, Foot) or a token
// (Terminal) in `label`.
struct Node {
    NodeKind kind = NodeKind::Interior;
    std::string label;

    bool is_leaf_kind() const noexcept { return kind != NodeKind::Interior; }
    bool operator==(const Node&) const = default;

    static Node interior(std::string s) { return {NodeKind::Interior, std::move(s)}; }
    static Node slot(std::string s) { return {NodeKind::Slot, std::move(s)}; }
    static Node foot(std::string s) { return {NodeKind::Foot, std::move(s)}; }
    static Node terminal(std::string s) { return {NodeKind::Terminal, std::move(s)}; }
};

enum class TreeClass { Initial, Auxiliary };

std::string_view to_string(TreeClass c);

// Immutable Gorn-addressed tree. Construction validates that the address set
// is prefix-closed and sibling-contiguous, that the root is Interior, that
// slots, feet and terminals are leaves, and that there is at most one foot.
class SyntaxTree {
public:
    using NodeMap = std::map<GornAddress, Node>;

    SyntaxTree();  // single Interior node labelled "S"
    explicit SyntaxTree(NodeMap nodes);

    const NodeMap& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool contains(const GornAddress& a) const { return nodes_.count(a) != 0; }

    // Throws AddressNotFound.
    const Node& at(const GornAddress& a) const;
    const Node& root() const { return nodes_.begin()->second; }

    std::optional<GornAddress> foot() const noexcept { return foot_; }
    std::uint32_t child_count(const GornAddress& a) const;
    std::vector<GornAddress> children(const GornAddress& a) const;

    // Leaf addresses (nodes without children) in left-to-right order.
    std::vector<GornAddress> frontier() const;

    // Throws MalformedTree if a foot exists whose symbol differs from the
    // root's.
    TreeClass tree_class() const;

    bool operator==(const SyntaxTree&) const = default;

private:
    NodeMap nodes_;
    std::optional<GornAddress> foot_;
};

const Node& node_at(const SyntaxTree& tree, const GornAddress& addr);

// Result of a composition together with where every surviving input node
// landed. `host` omits the consumed slot (substitution); `guest` omits the
// foot (adjunction), whose position is taken by the former site node. The
// two maps together are a bijection onto the result's nodes.
struct Composition {
    SyntaxTree tree;
    std::map<GornAddress, GornAddress> host;
    std::map<GornAddress, GornAddress> guest;
};

Composition substitute_traced(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& filler);
Composition adjoin_traced(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& aux);

inline SyntaxTree substitute(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& filler) {
    return substitute_traced(target, addr, filler).tree;
}
inline SyntaxTree adjoin(const SyntaxTree& target, const GornAddress& addr, const SyntaxTree& aux) {
    return adjoin_traced(target, addr, aux).tree;
}

// True for a slot, false for an interior node; any other node kind takes no
// operation and throws OperationMismatch.
bool is_substitution_site(const SyntaxTree& host, const GornAddress& site);

enum class YieldMode { Strict, Partial };

// Terminal tokens in frontier order. Partial mode renders a slot as "⟨X↓⟩"
// and a foot as "⟨X*⟩"; strict mode throws IncompleteTree on either.
std::vector<std::string> yield_tokens(const SyntaxTree& tree, YieldMode mode = YieldMode::Strict);
std::string yield_string(const SyntaxTree& tree, YieldMode mode = YieldMode::Strict);

std::string join_tokens(const std::vector<std::string>& tokens);

// Bracketed text: `S(NP! VP(V("cooked") NP!))`. `!` marks a slot, `*` a foot,
// double-quoted atoms are terminals (with \" and \\ escapes).
std::string print_tree(const SyntaxTree& tree);
SyntaxTree parse_tree(std::string_view text);

namespace detail {
// Parses one tree starting at `pos`, skipping leading whitespace, and leaves
// `pos` just past it. Throws ParseFailure.
SyntaxTree parse_tree_prefix(std::string_view text, std::size_t& pos);
bool is_symbol_char(char c);
std::string quote_terminal(std::string_view token);
}  // namespace detail

}  // namespace lstag
