#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lstag/tag.hpp"

namespace lstag {

// a_L ⌢ a_R: a left-tree address tied to a right-tree address.
struct Link {
    GornAddress left;
    GornAddress right;

    auto operator<=>(const Link&) const = default;
    bool operator==(const Link&) const = default;
};

std::string to_string(const Link& l);  // "2.2~2.2"

struct StagPair {
    std::string name;
    SyntaxTree left;
    SyntaxTree right;
    std::vector<Link> links;

    bool operator==(const StagPair&) const = default;
};

// Endpoint resolution for every link.
Diagnostics validate_stag_pair(const StagPair& p);

class StagGrammar {
public:
    // Throws DuplicateName or EndpointUnresolved.
    void add(StagPair pair);

    const StagPair* find(std::string_view name) const;
    const StagPair& at(std::string_view name) const;  // throws UnknownTree
    const std::map<std::string, StagPair, std::less<>>& pairs() const noexcept { return pairs_; }

    TagGrammar left_projection() const;
    TagGrammar right_projection() const;

private:
    std::map<std::string, StagPair, std::less<>> pairs_;
};

// Synchronized composition at link member `member` of `host`: the guest's
// left tree goes in at the member's left address and its right tree at the
// member's right address. Both sides must perform the same operation. The
// member is consumed; every other host link and every guest link survives,
// with endpoints carried through the composition node maps, so the result
// always has |host.links| + |guest.links| - 1 links.
StagPair stag_compose(const StagPair& host, std::size_t member, const StagPair& guest);

// Replays a derivation tree whose edge addresses name the *left* endpoint of
// the consumed link in the parent's elementary pair.
StagPair stag_replay(const StagGrammar& grammar, const DerivationTree& d);

// The same derivation with every edge relabelled by the right endpoint of the
// link it consumes, i.e. the derivation tree over the right projection.
DerivationTree right_derivation(const StagGrammar& grammar, const DerivationTree& d);

}  // namespace lstag
