#include "lstag/engine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lstag {

void check_budget(const EnumerationBudget& b) {
    if (b.max_operations < 1) throw std::invalid_argument("max operations must be at least 1");
    if (b.max_structures < 1) throw std::invalid_argument("max structures must be at least 1");
}

namespace {

bool has_edge(const DerivationTree& d, const GornAddress& a) {
    return std::any_of(d.children.begin(), d.children.end(), [&](const DerivationEdge& e) { return e.addr == a; });
}

// Every derivation tree one operation larger than `d`.
std::vector<DerivationTree> tag_successors(const TagGrammar& g, const DerivationTree& d) {
    std::vector<DerivationTree> out;
    const SyntaxTree& tree = g.at(d.name).tree;
    for (const auto& [addr, node] : tree.nodes()) {
        if (has_edge(d, addr)) continue;
        if (node.kind != NodeKind::Slot && node.kind != NodeKind::Interior) continue;
        const TreeClass wanted = node.kind == NodeKind::Slot ? TreeClass::Initial : TreeClass::Auxiliary;
        for (const auto& [name, e] : g.entries()) {
            if (e.cls != wanted || e.tree.root().label != node.label) continue;
            DerivationTree next = d;
            next.children.push_back({addr, DerivationTree{name, {}}});
            out.push_back(std::move(next));
        }
    }
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        for (auto& child : tag_successors(g, d.children[i].child)) {
            DerivationTree next = d;
            next.children[i].child = std::move(child);
            out.push_back(std::move(next));
        }
    }
    return out;
}

template <class R>
void sort_results(std::vector<R>& results) {
    std::sort(results.begin(), results.end(), [](const R& a, const R& b) {
        if (a.yield != b.yield) return a.yield < b.yield;
        if (a.operations != b.operations) return a.operations < b.operations;
        return a.key < b.key;
    });
}

bool has_open_leaf(const SyntaxTree& t) {
    return std::any_of(t.nodes().begin(), t.nodes().end(), [](const auto& kv) {
        return kv.second.kind == NodeKind::Slot || kv.second.kind == NodeKind::Foot;
    });
}

}  // namespace

TagEnumeration enumerate(const TagGrammar& grammar, const std::string& start, const EnumerationBudget& budget) {
    check_budget(budget);
    TagEnumeration out;
    std::set<std::string> seen;
    std::vector<DerivationTree> layer;

    auto admit = [&](DerivationTree d, std::size_t ops) {
        auto key = canonical_string(d);
        if (seen.count(key)) return false;
        if (out.results.size() >= budget.max_structures) {
            out.truncated = true;
            return false;
        }
        seen.insert(key);
        TagResult r;
        r.derived = replay(grammar, d);
        r.complete = !has_open_leaf(r.derived);
        r.yield = yield_string(r.derived, YieldMode::Partial);
        r.operations = ops;
        r.key = std::move(key);
        r.derivation = d;
        out.results.push_back(std::move(r));
        layer.push_back(std::move(d));
        return true;
    };

    for (const auto& [name, e] : grammar.entries())
        if (e.cls == TreeClass::Initial && e.tree.root().label == start) admit(DerivationTree{name, {}}, 0);
    for (std::size_t ops = 1; ops <= budget.max_operations && !layer.empty() && !out.truncated; ++ops) {
        std::vector<DerivationTree> current;
        current.swap(layer);
        for (const auto& d : current)
            for (auto& next : tag_successors(grammar, d)) admit(std::move(next), ops);
    }
    sort_results(out.results);
    return out;
}

namespace {

std::vector<DerivedStructure> lstag_successors(const LstagGrammar& g, const DerivedStructure& d) {
    std::vector<DerivedStructure> out;
    auto attempt = [&](auto&& op) {
        try {
            out.push_back(op());
        } catch (const Error&) {
            // not a legal move
        }
    };
    for (const auto& group : d.live_links) {
        for (const auto& [name, pair] : g.pairs()) {
            if (group.right.size() > 1)
                attempt([&] { return shared_substitute(d, group, pair); });
            else
                attempt([&] { return lstag_compose(d, group.left, group.right.front(), pair); });
        }
    }
    // Guests with phi links may also attach at unlinked sites of one instance.
    std::vector<const LstagPair*> sharers;
    for (const auto& [name, pair] : g.pairs())
        if (!pair.phi.empty()) sharers.push_back(&pair);
    if (sharers.empty()) return out;
    std::set<std::pair<GornAddress, RightSite>> linked;
    for (const auto& group : d.live_links)
        for (const auto& s : group.right) linked.emplace(group.left, s);
    for (const auto& [la, lo] : d.left_origin) {
        for (FragmentId f = 0; f < d.fragments.size(); ++f) {
            for (const auto& [ra, ro] : d.fragments[f].origin) {
                if (ro.instance != lo.instance) continue;
                const RightSite site{f, ra};
                if (linked.count({la, site})) continue;  // covered above
                for (const auto* pair : sharers) attempt([&] { return lstag_compose(d, la, site, *pair); });
            }
        }
    }
    return out;
}

}  // namespace

LstagEnumeration enumerate(const LstagGrammar& grammar, const std::string& start, const EnumerationBudget& budget) {
    check_budget(budget);
    LstagEnumeration out;
    std::set<std::string> seen;
    std::vector<DerivedStructure> layer;

    auto admit = [&](DerivedStructure d, std::size_t ops) {
        auto key = derivation_key(d);
        if (seen.count(key)) return;
        if (out.results.size() >= budget.max_structures) {
            out.truncated = true;
            return;
        }
        seen.insert(key);
        LstagResult r;
        r.complete = !has_open_leaf(d.left);
        r.yield = yield_string(d.left, YieldMode::Partial);
        r.operations = ops;
        r.key = std::move(key);
        r.structure = d;
        out.results.push_back(std::move(r));
        layer.push_back(std::move(d));
    };

    for (const auto& [name, pair] : grammar.pairs()) {
        if (pair.left.root().label != start) continue;
        if (pair.left.tree_class() != TreeClass::Initial || pair.right.tree_class() != TreeClass::Initial) continue;
        admit(DerivedStructure::start(pair), 0);
    }
    for (std::size_t ops = 1; ops <= budget.max_operations && !layer.empty() && !out.truncated; ++ops) {
        std::vector<DerivedStructure> current;
        current.swap(layer);
        for (const auto& d : current)
            for (auto& next : lstag_successors(grammar, d)) admit(std::move(next), ops);
    }
    sort_results(out.results);
    return out;
}

namespace {

template <class E>
std::vector<std::string> complete_yields(const E& e) {
    std::set<std::string> s;
    for (const auto& r : e.results)
        if (r.complete) s.insert(r.yield);
    return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::string> language_sample(const TagEnumeration& e) { return complete_yields(e); }
std::vector<std::string> language_sample(const LstagEnumeration& e) { return complete_yields(e); }

std::vector<std::string> language_sample(const TagGrammar& grammar, const std::string& start,
                                         const EnumerationBudget& budget) {
    return language_sample(enumerate(grammar, start, budget));
}

std::vector<std::string> language_sample(const LstagGrammar& grammar, const std::string& start,
                                         const EnumerationBudget& budget) {
    return language_sample(enumerate(grammar, start, budget));
}

}  // namespace lstag
