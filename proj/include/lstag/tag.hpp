#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lstag/errors.hpp"
#include "lstag/tree.hpp"

namespace lstag {

struct ElementaryTree {
    std::string name;
    SyntaxTree tree;
    TreeClass cls = TreeClass::Initial;

    bool operator==(const ElementaryTree&) const = default;
};

class TagGrammar {
public:
    // Throws DuplicateName, or MalformedTree for a foot/root symbol clash.
    void add(std::string name, SyntaxTree tree);

    const ElementaryTree* find(std::string_view name) const;
    const ElementaryTree& at(std::string_view name) const;  // throws UnknownTree

    const std::map<std::string, ElementaryTree, std::less<>>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::map<std::string, ElementaryTree, std::less<>> entries_;
};

struct DerivationEdge;

// Operation history in the usual TAG sense: nodes name elementary trees,
// edges carry the address in the parent's *elementary* tree where the child
// was substituted or adjoined.
struct DerivationTree {
    std::string name;
    std::vector<DerivationEdge> children;

    bool operator==(const DerivationTree&) const;
};

struct DerivationEdge {
    GornAddress addr;
    DerivationTree child;

    bool operator==(const DerivationEdge&) const = default;
};

inline bool DerivationTree::operator==(const DerivationTree& o) const {
    return name == o.name && children == o.children;
}

// Sorted-children rendering, e.g. "cooked(1:John 2.2:beans(1:dried))". Two
// derivation trees that differ only in child order render identically.
std::string canonical_string(const DerivationTree& d);
std::size_t operation_count(const DerivationTree& d);

// Empty iff replay would succeed. `where` is the derivation path of the
// offending node, e.g. "cooked/2.2:beans".
Diagnostics validate_derivation(const TagGrammar& grammar, const DerivationTree& d);

// Post-order replay: every child is replayed before it is composed into its
// parent. Edge addresses are tracked through earlier adjunctions, so child
// order does not matter.
SyntaxTree replay(const TagGrammar& grammar, const DerivationTree& d);

// `name#tag` names a distinct instance of elementary tree `name`.
std::string_view instance_name(std::string_view token);

// Derivation scripts: one step per line.
//
//   # comment
//   start cooked
//   cooked @ 1 <- John
//   cooked @ 2.2 <- beans
//   beans @ 1 <- dried
//   cooks @ 2.1 ~ ε <- eats     (explicit right site, pair grammars only)
//
// The first host becomes the start instance when `start` is absent.
struct ScriptStep {
    std::string host;
    GornAddress left;
    std::optional<GornAddress> right;
    std::string guest;
    std::size_t line = 0;
};

struct DerivationScript {
    std::string start;
    std::vector<ScriptStep> steps;
};

DerivationScript parse_script(std::string_view text);  // throws ParseFailure
std::string print_script(const DerivationScript& script);

// Builds the derivation tree a script describes. Throws ParseError when a
// host was never introduced, a guest token is reused, or a step carries an
// explicit right site.
DerivationTree derivation_from_script(const DerivationScript& script);

}  // namespace lstag
