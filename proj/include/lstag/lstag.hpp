#pragma once

// Link-sharing synchronous composition.
//
// An LstagPair is a left (constituency) tree and a right (dependency) tree
// with two link lists: `delta`, ordinary left-to-right links, and `phi`,
// reflexive links on right-tree nodes. When a guest carrying phi links is
// composed into a host, the host's link groups are paired with the guest's
// phi links by list position and each pair becomes one shared group: a single
// left address tied to several right addresses. Substituting into a shared
// group fills the left slot once and hangs one right instance under every
// right site, so the right side becomes a rooted DAG.
//
// The right side of a derived structure is kept as fragments: a fragment is
// a tree grown by adjunction, and substitution links fragments by an edge
// from a slot to the child fragment's root. A fragment may have several
// parents. Every node remembers which instance and elementary address it came
// from, which is what the derivation projections are built from.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lstag/stag.hpp"
#include "lstag/tag.hpp"

namespace lstag {

struct LstagPair {
    std::string name;
    SyntaxTree left;
    SyntaxTree right;
    std::vector<Link> delta;  // in ≺ order
    std::vector<Link> phi;    // in ≺ order; reflexive, both ends in `right`

    bool operator==(const LstagPair&) const = default;
};

// Reflexivity of phi, disjointness of delta and phi, endpoint resolution.
Diagnostics validate_pair(const LstagPair& p);

class LstagGrammar {
public:
    // Throws DuplicateName or the first validate_pair diagnostic.
    void add(LstagPair pair);

    const LstagPair* find(std::string_view name) const;
    const LstagPair& at(std::string_view name) const;  // throws UnknownTree
    const std::map<std::string, LstagPair, std::less<>>& pairs() const noexcept { return pairs_; }
    bool empty() const noexcept { return pairs_.empty(); }

    TagGrammar left_projection() const;
    TagGrammar right_projection() const;

private:
    std::map<std::string, LstagPair, std::less<>> pairs_;
};

using InstanceId = std::uint32_t;
using FragmentId = std::uint32_t;

// Elementary provenance of a derived node.
struct NodeOrigin {
    InstanceId instance = 0;
    GornAddress addr;

    auto operator<=>(const NodeOrigin&) const = default;
    bool operator==(const NodeOrigin&) const = default;
};

struct RightSite {
    FragmentId fragment = 0;
    GornAddress addr;

    auto operator<=>(const RightSite&) const = default;
    bool operator==(const RightSite&) const = default;
};

std::string to_string(const RightSite& s);  // "f0:3.1"

struct FragmentEdge {
    GornAddress slot;
    FragmentId child = 0;

    bool operator==(const FragmentEdge&) const = default;
};

struct Fragment {
    SyntaxTree tree;
    std::map<GornAddress, NodeOrigin> origin;
    std::vector<FragmentEdge> edges;

    bool filled(const GornAddress& slot) const;
    bool operator==(const Fragment&) const = default;
};

// One left address tied to one or more right sites. A singleton group is an
// ordinary link member.
struct SharedLinkGroup {
    GornAddress left;
    std::vector<RightSite> right;

    bool operator==(const SharedLinkGroup&) const = default;
};

std::string to_string(const SharedLinkGroup& g);  // "1~[f0:3.1 f0:1]"

enum class OpKind { Substitution, Adjunction, SharedSubstitution };

std::string_view to_string(OpKind k);

struct DerivationRecord {
    OpKind kind = OpKind::Substitution;
    InstanceId guest = 0;
    NodeOrigin left_host;                // elementary address the left side attached at
    std::vector<NodeOrigin> right_hosts;  // one per right site
    GornAddress left_site;                // derived-tree coordinates at record time
    std::vector<RightSite> right_sites;

    bool operator==(const DerivationRecord&) const = default;
};

struct DerivedStructure {
    std::vector<std::string> instances;  // InstanceId -> pair name; 0 is the start pair
    SyntaxTree left;
    std::map<GornAddress, NodeOrigin> left_origin;
    std::vector<Fragment> fragments;  // FragmentId 0 is the root fragment
    std::vector<SharedLinkGroup> live_links;
    std::vector<DerivationRecord> history;
    // Elementary nodes that already took an adjunction, per side.
    std::set<NodeOrigin> adjoined_left;
    std::set<NodeOrigin> adjoined_right;

    // A lone pair: its delta links become singleton groups; its phi links are
    // not used by a host and are dropped.
    static DerivedStructure start(const LstagPair& pair);

    std::size_t in_degree(FragmentId f) const;
    // The right DAG flattened into one tree; a shared fragment is copied under
    // each of its parents.
    SyntaxTree unfold_right() const;
    bool right_is_acyclic() const;
    const NodeOrigin& right_origin(const RightSite& s) const;

    bool operator==(const DerivedStructure&) const = default;
};

// ⊔ over whole lists: group i of `host` is extended with `place(phi[i])`;
// groups past |phi| pass through. Throws CardinalityViolation when
// |host| < |phi|.
std::vector<SharedLinkGroup> link_share(std::span<const SharedLinkGroup> host, std::span<const GornAddress> phi,
                                        const std::function<RightSite(const GornAddress&)>& place);

// Composes `guest` at `left_site` of the left tree and `right_site` of the
// right DAG (both substitutions or both adjunctions).
//
// If the sites are a live singleton group, that group is consumed. A guest
// with phi links may also attach at an unlinked pair of sites owned by the
// same instance; any other unlinked composition is LinkNotFound. The guest's
// phi links are shared, in order, with the live groups of the instance owning
// the right site and are always used up; the guest's delta links are appended
// as new singleton groups.
DerivedStructure lstag_compose(const DerivedStructure& host, const GornAddress& left_site,
                               const RightSite& right_site, const LstagPair& guest);
DerivedStructure lstag_compose(const LstagPair& host, const GornAddress& left_site, const GornAddress& right_site,
                               const LstagPair& guest);

// Fills every site of a live group with one guest instance. Throws
// GroupNotLive, NotASlot, SymbolMismatch, ClassMismatch, or
// CardinalityViolation when the guest carries phi links.
DerivedStructure shared_substitute(const DerivedStructure& host, const SharedLinkGroup& group,
                                   const LstagPair& guest);

struct DerivationGraphNode {
    InstanceId id = 0;
    std::string name;
};

struct DerivationGraphEdge {
    InstanceId from = 0;
    InstanceId to = 0;
    GornAddress addr;
    OpKind kind = OpKind::Substitution;

    bool operator==(const DerivationGraphEdge&) const = default;
};

struct DerivationGraph {
    std::vector<DerivationGraphNode> nodes;
    std::vector<DerivationGraphEdge> edges;

    std::size_t in_degree(InstanceId id) const;
    bool is_acyclic() const;
    bool is_tree() const;  // rooted at node 0, every other node has one parent
    // Throws InconsistentHistory unless is_tree().
    DerivationTree to_tree() const;
};

struct Projections {
    DerivationTree left;
    DerivationGraph right;
};

Projections derivation_projections(const std::vector<std::string>& instances,
                                   const std::vector<DerivationRecord>& history);
inline Projections derivation_projections(const DerivedStructure& d) {
    return derivation_projections(d.instances, d.history);
}

// Order-independent identity of a derivation: the sorted left derivation
// tree, then the right graph's edges with instances named by their path in
// the left tree.
std::string derivation_key(const std::vector<std::string>& instances, const std::vector<DerivationRecord>& history);
inline std::string derivation_key(const DerivedStructure& d) { return derivation_key(d.instances, d.history); }

// Runs a derivation script. `host @ a <- guest` composes at the live group
// whose left end is elementary address `a` of instance `host` (a shared group
// triggers shared substitution); `host @ a ~ b <- guest` composes at explicit
// elementary addresses of `host` on each side.
DerivedStructure run_script(const LstagGrammar& grammar, const DerivationScript& script);

}  // namespace lstag
