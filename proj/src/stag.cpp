#include "lstag/stag.hpp"

#include <optional>

namespace lstag {

std::string to_string(const Link& l) { return l.left.to_string() + "~" + l.right.to_string(); }

Diagnostics validate_stag_pair(const StagPair& p) {
    Diagnostics out;
    for (const auto& l : p.links) {
        if (!p.left.contains(l.left))
            out.push_back({ErrorCode::EndpointUnresolved, p.name, "link " + to_string(l) + ": no left node"});
        if (!p.right.contains(l.right))
            out.push_back({ErrorCode::EndpointUnresolved, p.name, "link " + to_string(l) + ": no right node"});
    }
    return out;
}

void StagGrammar::add(StagPair pair) {
    if (pairs_.count(pair.name)) throw Error(ErrorCode::DuplicateName, "pair '" + pair.name + "' defined twice");
    auto diags = validate_stag_pair(pair);
    if (!diags.empty()) throw Error(diags.front().code, diags.front().where + ": " + diags.front().message);
    pair.left.tree_class();
    pair.right.tree_class();
    auto name = pair.name;
    pairs_.emplace(std::move(name), std::move(pair));
}

const StagPair* StagGrammar::find(std::string_view name) const {
    auto it = pairs_.find(name);
    return it == pairs_.end() ? nullptr : &it->second;
}

const StagPair& StagGrammar::at(std::string_view name) const {
    if (auto* p = find(name)) return *p;
    throw Error(ErrorCode::UnknownTree, "no pair named '" + std::string(name) + "'");
}

TagGrammar StagGrammar::left_projection() const {
    TagGrammar g;
    for (const auto& [name, p] : pairs_) g.add(name, p.left);
    return g;
}

TagGrammar StagGrammar::right_projection() const {
    TagGrammar g;
    for (const auto& [name, p] : pairs_) g.add(name, p.right);
    return g;
}

namespace {

Composition compose_one(const SyntaxTree& host, const GornAddress& site, const SyntaxTree& guest, bool subst) {
    return subst ? substitute_traced(host, site, guest) : adjoin_traced(host, site, guest);
}

GornAddress carry_host(const Composition& c, const GornAddress& a, const GornAddress& site) {
    auto it = c.host.find(a);
    return it != c.host.end() ? it->second : site;  // the consumed slot now holds the filler root
}

GornAddress carry_guest(const Composition& c, const GornAddress& p, const GornAddress& site, const SyntaxTree& guest) {
    auto it = c.guest.find(p);
    if (it != c.guest.end()) return it->second;
    return site.concat(*guest.foot());  // the foot is identified with the old site node
}

}  // namespace

StagPair stag_compose(const StagPair& host, std::size_t member, const StagPair& guest) {
    if (member >= host.links.size())
        throw Error(ErrorCode::LinkNotFound,
                    "pair '" + host.name + "' has no link member #" + std::to_string(member));
    const Link consumed = host.links[member];
    const bool subst_left = is_substitution_site(host.left, consumed.left);
    const bool subst_right = is_substitution_site(host.right, consumed.right);
    if (subst_left != subst_right)
        throw Error(ErrorCode::OperationMismatch, "link " + to_string(consumed) + " mixes substitution and adjunction");

    Composition left = compose_one(host.left, consumed.left, guest.left, subst_left);
    Composition right = compose_one(host.right, consumed.right, guest.right, subst_right);

    StagPair out{host.name, std::move(left.tree), std::move(right.tree), {}};
    out.links.reserve(host.links.size() + guest.links.size() - 1);
    for (std::size_t i = 0; i < host.links.size(); ++i) {
        if (i == member) continue;
        out.links.push_back({carry_host(left, host.links[i].left, consumed.left),
                             carry_host(right, host.links[i].right, consumed.right)});
    }
    for (const auto& l : guest.links)
        out.links.push_back({carry_guest(left, l.left, consumed.left, guest.left),
                             carry_guest(right, l.right, consumed.right, guest.right)});
    return out;
}

namespace {

// Index of the pair's own link whose original left endpoint is `addr`.
std::optional<std::size_t> own_member(const std::vector<std::optional<GornAddress>>& origin, const GornAddress& addr) {
    for (std::size_t i = 0; i < origin.size(); ++i)
        if (origin[i] == addr) return i;
    return std::nullopt;
}

StagPair replay_pair(const StagGrammar& g, const DerivationTree& d) {
    StagPair current = g.at(d.name);
    std::vector<std::optional<GornAddress>> origin;
    for (const auto& l : current.links) origin.emplace_back(l.left);
    for (const auto& edge : d.children) {
        StagPair child = replay_pair(g, edge.child);
        auto member = own_member(origin, edge.addr);
        if (!member)
            throw Error(ErrorCode::LinkNotFound, "'" + d.name + "' has no unused link at " + edge.addr.to_string());
        current = stag_compose(current, *member, child);
        origin.erase(origin.begin() + static_cast<std::ptrdiff_t>(*member));
        origin.resize(current.links.size());
    }
    return current;
}

}  // namespace

StagPair stag_replay(const StagGrammar& grammar, const DerivationTree& d) { return replay_pair(grammar, d); }

DerivationTree right_derivation(const StagGrammar& grammar, const DerivationTree& d) {
    const StagPair& p = grammar.at(d.name);
    std::vector<bool> used(p.links.size(), false);
    DerivationTree out{d.name, {}};
    for (const auto& edge : d.children) {
        std::optional<std::size_t> member;
        for (std::size_t i = 0; i < p.links.size() && !member; ++i)
            if (!used[i] && p.links[i].left == edge.addr) member = i;
        if (!member) throw Error(ErrorCode::LinkNotFound, "'" + d.name + "' has no link at " + edge.addr.to_string());
        used[*member] = true;
        out.children.push_back({p.links[*member].right, right_derivation(grammar, edge.child)});
    }
    return out;
}

}  // namespace lstag
