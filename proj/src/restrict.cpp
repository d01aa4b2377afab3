#include "lstag/restrict.hpp"

#include <algorithm>
#include <set>

namespace lstag {

Diagnostics validate_correspondence(const LstagPair& p, const Correspondence& c) {
    Diagnostics out;
    std::set<GornAddress> targets;
    for (const auto& [l, r] : c.pairs) {
        if (!p.left.contains(l))
            out.push_back({ErrorCode::BadCorrespondence, p.name, "no left node " + l.to_string()});
        if (!p.right.contains(r))
            out.push_back({ErrorCode::BadCorrespondence, p.name, "no right node " + r.to_string()});
        if (!targets.insert(r).second)
            out.push_back({ErrorCode::BadCorrespondence, p.name, "right node " + r.to_string() + " used twice"});
    }
    return out;
}

namespace {

GornAddress common_prefix(const GornAddress& a, const GornAddress& b) {
    std::vector<std::uint32_t> out;
    auto pa = a.path(), pb = b.path();
    for (std::size_t i = 0; i < pa.size() && i < pb.size() && pa[i] == pb[i]; ++i) out.push_back(pa[i]);
    return GornAddress(std::move(out));
}

std::string render_label(const Node& n) {
    switch (n.kind) {
        case NodeKind::Slot: return n.label + "↓";
        case NodeKind::Foot: return n.label + "*";
        case NodeKind::Terminal: return detail::quote_terminal(n.label);
        case NodeKind::Interior: return n.label;
    }
    return n.label;
}

void render_segment(const SyntaxTree& t, const GornAddress& a, const std::set<GornAddress>& excised,
                    const std::set<GornAddress>& image, std::string& out) {
    out += "[" + render_label(t.at(a));
    for (const auto& c : t.children(a)) {
        if (image.count(c)) continue;
        out += ' ';
        if (excised.count(c))
            render_segment(t, c, excised, image, out);
        else
            out += "[" + render_label(t.at(c)) + "]";
    }
    out += "]";
}

}  // namespace

std::vector<GornAddress> excised_nodes(const SyntaxTree& right, const std::vector<GornAddress>& image) {
    if (image.size() < 2) return {};
    GornAddress top = image.front();
    for (const auto& a : image) top = common_prefix(top, a);
    std::set<GornAddress> in_image(image.begin(), image.end());
    std::set<GornAddress> out;
    for (const auto& a : image) {
        // Walk up from each image node to the common ancestor.
        GornAddress cur = a;
        while (cur != top) {
            cur = cur.parent();
            if (!in_image.count(cur) && right.contains(cur)) out.insert(cur);
        }
    }
    return {out.begin(), out.end()};
}

Diagnostics check_left_contiguity(const LstagPair& p, const Correspondence& c) {
    Diagnostics out = validate_correspondence(p, c);
    if (!out.empty()) return out;
    std::vector<GornAddress> image;
    for (const auto& [l, r] : c.pairs) image.push_back(r);
    std::sort(image.begin(), image.end());
    const auto gaps = excised_nodes(p.right, image);
    const std::set<GornAddress> excised(gaps.begin(), gaps.end());
    const std::set<GornAddress> in_image(image.begin(), image.end());
    for (const auto& a : gaps) {
        if (!a.is_root() && excised.count(a.parent())) continue;  // reported with its topmost excised ancestor
        std::string segment;
        render_segment(p.right, a, excised, in_image, segment);
        out.push_back({ErrorCode::Discontiguous, p.name, "excised segment at " + a.to_string() + ": " + segment});
    }
    return out;
}

Diagnostics check_lexical_contiguity(const SyntaxTree& t) {
    const auto leaves = t.frontier();
    std::vector<std::size_t> terminals;
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (t.at(leaves[i]).kind == NodeKind::Terminal) terminals.push_back(i);
    Diagnostics out;
    if (terminals.size() < 2) return out;
    for (std::size_t i = terminals.front() + 1; i < terminals.back(); ++i) {
        const Node& n = t.at(leaves[i]);
        if (n.kind == NodeKind::Slot || n.kind == NodeKind::Foot)
            out.push_back({ErrorCode::LexicallyDiscontiguous, leaves[i].to_string(),
                           render_label(n) + " at " + leaves[i].to_string() + " splits the lexical string \"" +
                               yield_string(t, YieldMode::Partial) + "\""});
    }
    return out;
}

}  // namespace lstag
