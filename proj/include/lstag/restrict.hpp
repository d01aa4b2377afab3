#pragma once

#include <map>
#include <vector>

#include "lstag/lstag.hpp"

namespace lstag {

// Declared mapping from left-element nodes to the right-element nodes they
// stand for.
struct Correspondence {
    std::map<GornAddress, GornAddress> pairs;

    bool operator==(const Correspondence&) const = default;
};

// Injectivity and endpoint resolution.
Diagnostics validate_correspondence(const LstagPair& p, const Correspondence& c);

// The left element may not be built from discontinuous parts of the right
// element: the image of `c` in the right tree must be connected under
// dominance. Each violation reports the right-tree nodes that lie between
// image nodes but are missing from the image, rendered as a bracketed
// segment such as "[S [NP↓] [VP]]".
Diagnostics check_left_contiguity(const LstagPair& p, const Correspondence& c);

// The excised nodes alone: every right node on a dominance path between two
// image nodes that is not itself in the image, in address order.
std::vector<GornAddress> excised_nodes(const SyntaxTree& right, const std::vector<GornAddress>& image);

// The terminals on the frontier must form one block: no slot or foot may sit
// strictly between two terminals.
Diagnostics check_lexical_contiguity(const SyntaxTree& t);

}  // namespace lstag
