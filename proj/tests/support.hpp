#pragma once

// Independent oracles and generators shared by the unit and acceptance
// tests. Nothing here calls the composition code it is used to check.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lstag/tree.hpp"

namespace testing_support {

using Path = std::vector<std::uint32_t>;

inline std::string source_path(const std::string& rel) { return std::string(LSTAG_SOURCE_DIR) + "/" + rel; }

inline std::string read_text(const std::string& rel) {
    std::ifstream in(source_path(rel), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline bool starts_with(const Path& p, const Path& prefix) {
    if (prefix.size() > p.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (p[i] != prefix[i]) return false;
    return true;
}

inline Path cat(Path a, const Path& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Where a host node lands when an auxiliary with foot `foot` adjoins at
// `site`.
inline Path moved_by_adjunction(const Path& orig, const Path& site, const Path& foot) {
    if (!starts_with(orig, site)) return orig;
    return cat(cat(site, foot), Path(orig.begin() + static_cast<long>(site.size()), orig.end()));
}

inline std::vector<Path> all_paths(std::size_t max_depth, std::uint32_t max_branch) {
    std::vector<Path> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_depth) continue;
        for (std::uint32_t k = 1; k <= max_branch; ++k) {
            Path p = out[i];
            p.push_back(k);
            out.push_back(std::move(p));
        }
    }
    return out;
}

// Leaves rendered the way a partial yield renders them, read straight off
// the node table.
struct Leaf {
    Path path;
    std::string text;
    bool foot = false;
};

inline std::vector<Leaf> leaves(const lstag::SyntaxTree& t) {
    std::map<Path, const lstag::Node*> nodes;
    for (const auto& [a, n] : t.nodes()) nodes.emplace(Path(a.path().begin(), a.path().end()), &n);
    std::vector<Leaf> out;
    for (const auto& [p, n] : nodes) {
        Path first = p;
        first.push_back(1);
        if (nodes.count(first)) continue;
        switch (n->kind) {
            case lstag::NodeKind::Terminal: out.push_back({p, n->label, false}); break;
            case lstag::NodeKind::Slot: out.push_back({p, "⟨" + n->label + "↓⟩", false}); break;
            case lstag::NodeKind::Foot: out.push_back({p, "⟨" + n->label + "*⟩", true}); break;
            case lstag::NodeKind::Interior: break;  // childless interior spells nothing
        }
    }
    return out;
}

// u · w1 · v · w2 · z: the yield an adjunction must produce.
inline std::vector<std::string> splice_yield(const lstag::SyntaxTree& target, const Path& site,
                                             const lstag::SyntaxTree& aux) {
    std::vector<std::string> u, v, z, w1, w2;
    for (const auto& l : leaves(target)) {
        if (starts_with(l.path, site))
            v.push_back(l.text);
        else if (l.path < site)
            u.push_back(l.text);
        else
            z.push_back(l.text);
    }
    bool after = false;
    for (const auto& l : leaves(aux)) {
        if (l.foot) {
            after = true;
            continue;
        }
        (after ? w2 : w1).push_back(l.text);
    }
    std::vector<std::string> out = u;
    for (auto* part : {&w1, &v, &w2, &z}) out.insert(out.end(), part->begin(), part->end());
    return out;
}

// Substitution yield: the slot's placeholder replaced by the filler's leaves.
inline std::vector<std::string> splice_substitution(const lstag::SyntaxTree& target, const Path& slot,
                                                    const lstag::SyntaxTree& filler) {
    std::vector<std::string> out;
    for (const auto& l : leaves(target)) {
        if (l.path == slot)
            for (const auto& f : leaves(filler)) out.push_back(f.text);
        else
            out.push_back(l.text);
    }
    return out;
}

// Dominance connectivity by brute force: for every two image nodes, every
// node on the path between them through their lowest common ancestor is in
// the image.
inline bool dominance_connected(const std::vector<Path>& image) {
    auto in_image = [&](const Path& p) {
        for (const auto& q : image)
            if (q == p) return true;
        return false;
    };
    for (const auto& a : image) {
        for (const auto& b : image) {
            std::size_t k = 0;
            while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
            for (const auto* end : {&a, &b})
                for (std::size_t len = k; len <= end->size(); ++len)
                    if (!in_image(Path(end->begin(), end->begin() + static_cast<long>(len)))) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Generators

// Every ordered tree shape with exactly n nodes, written as the child count
// of each node in preorder.
inline std::vector<std::vector<std::size_t>> all_shapes(std::size_t n) {
    // forests[m] holds (root count, preorder sequence) for every ordered
    // forest with m nodes.
    using Forest = std::pair<std::size_t, std::vector<std::size_t>>;
    std::vector<std::vector<std::vector<std::size_t>>> trees(n + 1);
    std::vector<std::vector<Forest>> forests(n + 1);
    forests[0].push_back({0, {}});
    for (std::size_t m = 1; m <= n; ++m) {
        for (const auto& [k, seq] : forests[m - 1]) {
            std::vector<std::size_t> t{k};
            t.insert(t.end(), seq.begin(), seq.end());
            trees[m].push_back(std::move(t));
        }
        for (std::size_t first = 1; first <= m; ++first)
            for (const auto& t : trees[first])
                for (const auto& [k, rest] : forests[m - first]) {
                    std::vector<std::size_t> seq = t;
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    forests[m].push_back({k + 1, std::move(seq)});
                }
    }
    return trees[n];
}

// Builds a tree from a preorder child-count shape. `leaf` decides each leaf
// node given its index among the leaves.
inline lstag::SyntaxTree build_shape(const std::vector<std::size_t>& shape, const std::string& interior,
                                     const std::function<lstag::Node(std::size_t)>& leaf) {
    std::map<lstag::GornAddress, lstag::Node> nodes;
    std::size_t pos = 0, leaf_index = 0;
    std::function<void(const Path&)> walk = [&](const Path& p) {
        const std::size_t kids = shape[pos++];
        if (kids == 0) {
            nodes.emplace(lstag::GornAddress(p), leaf(leaf_index++));
            return;
        }
        nodes.emplace(lstag::GornAddress(p), lstag::Node{lstag::NodeKind::Interior, interior});
        for (std::uint32_t k = 1; k <= kids; ++k) {
            Path c = p;
            c.push_back(k);
            walk(c);
        }
    };
    walk({});
    return lstag::SyntaxTree(std::move(nodes));
}

inline std::size_t leaf_count(const std::vector<std::size_t>& shape) {
    std::size_t n = 0;
    for (auto k : shape) n += k == 0;
    return n;
}

// Random trees: interior nodes labelled from `labels`, leaves a mix of
// terminals and slots.
class TreeGen {
public:
    explicit TreeGen(std::uint32_t seed) : rng_(seed) {}

    std::mt19937& rng() { return rng_; }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    // Root is always interior. `max_nodes` bounds the size.
    lstag::SyntaxTree tree(std::size_t max_nodes, const std::vector<std::string>& labels, double slot_rate = 0.4) {
        std::map<lstag::GornAddress, lstag::Node> nodes;
        std::size_t budget = max_nodes;
        std::function<void(const Path&, bool)> grow = [&](const Path& p, bool force_interior) {
            --budget;
            const bool interior = force_interior || (budget >= 1 && coin(0.45));
            if (!interior) {
                if (coin(slot_rate))
                    nodes.emplace(lstag::GornAddress(p), lstag::Node{lstag::NodeKind::Slot, labels[pick(labels.size())]});
                else
                    nodes.emplace(lstag::GornAddress(p),
                                  lstag::Node{lstag::NodeKind::Terminal, "w" + std::to_string(counter_++)});
                return;
            }
            nodes.emplace(lstag::GornAddress(p), lstag::Node{lstag::NodeKind::Interior, labels[pick(labels.size())]});
            std::size_t kids = 1 + pick(3);
            kids = std::min(kids, std::max<std::size_t>(budget, 1));
            for (std::uint32_t k = 1; k <= kids; ++k) {
                Path c = p;
                c.push_back(k);
                if (budget == 0) {
                    nodes.emplace(lstag::GornAddress(c),
                                  lstag::Node{lstag::NodeKind::Terminal, "w" + std::to_string(counter_++)});
                    continue;
                }
                grow(c, false);
            }
        };
        grow({}, true);
        return lstag::SyntaxTree(std::move(nodes));
    }

    // An auxiliary tree: a random tree whose root is `label`, with one leaf
    // replaced by a foot `label*`.
    lstag::SyntaxTree aux(std::size_t max_nodes, const std::string& label, const std::vector<std::string>& labels) {
        auto t = tree(max_nodes, labels, 0.3);
        auto nodes = t.nodes();
        nodes.at(lstag::GornAddress{}).label = label;
        std::vector<lstag::GornAddress> leafs;
        for (const auto& a : t.frontier()) leafs.push_back(a);
        nodes.at(leafs[pick(leafs.size())]) = lstag::Node{lstag::NodeKind::Foot, label};
        return lstag::SyntaxTree(std::move(nodes));
    }

    // An initial tree rooted in `label`.
    lstag::SyntaxTree initial(std::size_t max_nodes, const std::string& label, const std::vector<std::string>& labels) {
        auto t = tree(max_nodes, labels, 0.3);
        auto nodes = t.nodes();
        nodes.at(lstag::GornAddress{}).label = label;
        return lstag::SyntaxTree(std::move(nodes));
    }

private:
    std::mt19937 rng_;
    std::size_t counter_ = 0;
};

}  // namespace testing_support
