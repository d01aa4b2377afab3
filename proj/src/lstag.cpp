#include "lstag/lstag.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace lstag {

Diagnostics validate_pair(const LstagPair& p) {
    Diagnostics out;
    for (const auto& l : p.delta) {
        if (!p.left.contains(l.left))
            out.push_back({ErrorCode::EndpointUnresolved, p.name, "delta link " + to_string(l) + ": no left node"});
        if (!p.right.contains(l.right))
            out.push_back({ErrorCode::EndpointUnresolved, p.name, "delta link " + to_string(l) + ": no right node"});
    }
    for (const auto& l : p.phi) {
        if (l.left != l.right)
            out.push_back({ErrorCode::NotReflexive, p.name, "phi link " + to_string(l) + " is not reflexive"});
        if (!p.right.contains(l.left) || !p.right.contains(l.right))
            out.push_back({ErrorCode::EndpointUnresolved, p.name, "phi link " + to_string(l) + ": no right node"});
    }
    for (const auto& l : p.phi)
        if (std::find(p.delta.begin(), p.delta.end(), l) != p.delta.end())
            out.push_back({ErrorCode::NotDisjoint, p.name, "link " + to_string(l) + " is in both delta and phi"});
    for (const auto* t : {&p.left, &p.right}) {
        try {
            t->tree_class();
        } catch (const Error& e) {
            out.push_back({e.code(), p.name, e.message()});
        }
    }
    return out;
}

void LstagGrammar::add(LstagPair pair) {
    if (pairs_.count(pair.name)) throw Error(ErrorCode::DuplicateName, "pair '" + pair.name + "' defined twice");
    auto diags = validate_pair(pair);
    if (!diags.empty()) throw Error(diags.front().code, diags.front().where + ": " + diags.front().message);
    auto name = pair.name;
    pairs_.emplace(std::move(name), std::move(pair));
}

const LstagPair* LstagGrammar::find(std::string_view name) const {
    auto it = pairs_.find(name);
    return it == pairs_.end() ? nullptr : &it->second;
}

const LstagPair& LstagGrammar::at(std::string_view name) const {
    if (auto* p = find(name)) return *p;
    throw Error(ErrorCode::UnknownTree, "no pair named '" + std::string(name) + "'");
}

TagGrammar LstagGrammar::left_projection() const {
    TagGrammar g;
    for (const auto& [name, p] : pairs_) g.add(name, p.left);
    return g;
}

TagGrammar LstagGrammar::right_projection() const {
    TagGrammar g;
    for (const auto& [name, p] : pairs_) g.add(name, p.right);
    return g;
}

std::string to_string(const RightSite& s) { return "f" + std::to_string(s.fragment) + ":" + s.addr.to_string(); }

std::string to_string(const SharedLinkGroup& g) {
    std::string out = g.left.to_string() + "~[";
    for (std::size_t i = 0; i < g.right.size(); ++i) {
        if (i) out += ' ';
        out += to_string(g.right[i]);
    }
    return out + "]";
}

std::string_view to_string(OpKind k) {
    switch (k) {
        case OpKind::Substitution: return "substitution";
        case OpKind::Adjunction: return "adjunction";
        case OpKind::SharedSubstitution: return "shared-substitution";
    }
    return "?";
}

bool Fragment::filled(const GornAddress& slot) const {
    return std::any_of(edges.begin(), edges.end(), [&](const FragmentEdge& e) { return e.slot == slot; });
}

namespace {

std::map<GornAddress, NodeOrigin> origins_of(const SyntaxTree& t, InstanceId inst) {
    std::map<GornAddress, NodeOrigin> out;
    for (const auto& [a, n] : t.nodes()) out.emplace(a, NodeOrigin{inst, a});
    return out;
}

}  // namespace

DerivedStructure DerivedStructure::start(const LstagPair& pair) {
    DerivedStructure d;
    d.instances.push_back(pair.name);
    d.left = pair.left;
    d.left_origin = origins_of(pair.left, 0);
    d.fragments.push_back(Fragment{pair.right, origins_of(pair.right, 0), {}});
    for (const auto& l : pair.delta) d.live_links.push_back({l.left, {RightSite{0, l.right}}});
    return d;
}

std::size_t DerivedStructure::in_degree(FragmentId f) const {
    std::size_t n = 0;
    for (const auto& frag : fragments)
        for (const auto& e : frag.edges) n += e.child == f;
    return n;
}

SyntaxTree DerivedStructure::unfold_right() const {
    std::function<SyntaxTree(FragmentId)> unfold = [&](FragmentId id) {
        const Fragment& f = fragments.at(id);
        SyntaxTree t = f.tree;
        for (const auto& e : f.edges) t = substitute(t, e.slot, unfold(e.child));
        return t;
    };
    return unfold(0);
}

bool DerivedStructure::right_is_acyclic() const {
    enum class Mark { None, Active, Done };
    std::vector<Mark> mark(fragments.size(), Mark::None);
    std::function<bool(FragmentId)> visit = [&](FragmentId id) {
        if (mark[id] == Mark::Active) return false;
        if (mark[id] == Mark::Done) return true;
        mark[id] = Mark::Active;
        for (const auto& e : fragments[id].edges)
            if (!visit(e.child)) return false;
        mark[id] = Mark::Done;
        return true;
    };
    for (FragmentId i = 0; i < fragments.size(); ++i)
        if (!visit(i)) return false;
    return true;
}

const NodeOrigin& DerivedStructure::right_origin(const RightSite& s) const {
    if (s.fragment >= fragments.size())
        throw Error(ErrorCode::AddressNotFound, "no fragment f" + std::to_string(s.fragment));
    auto it = fragments[s.fragment].origin.find(s.addr);
    if (it == fragments[s.fragment].origin.end())
        throw Error(ErrorCode::AddressNotFound, "no right node at " + to_string(s));
    return it->second;
}

std::vector<SharedLinkGroup> link_share(std::span<const SharedLinkGroup> host, std::span<const GornAddress> phi,
                                        const std::function<RightSite(const GornAddress&)>& place) {
    if (host.size() < phi.size())
        throw Error(ErrorCode::CardinalityViolation, std::to_string(phi.size()) + " phi links but only " +
                                                         std::to_string(host.size()) + " host link groups");
    std::vector<SharedLinkGroup> out(host.begin(), host.end());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i].right.push_back(place(phi[i]));
    return out;
}

namespace {

Composition compose_one(const SyntaxTree& host, const GornAddress& site, const SyntaxTree& guest, bool subst) {
    return subst ? substitute_traced(host, site, guest) : adjoin_traced(host, site, guest);
}

GornAddress carry_host(const Composition& c, const GornAddress& a, const GornAddress& site) {
    auto it = c.host.find(a);
    return it != c.host.end() ? it->second : site;
}

GornAddress carry_guest(const Composition& c, const GornAddress& p, const GornAddress& site, const SyntaxTree& guest) {
    auto it = c.guest.find(p);
    return it != c.guest.end() ? it->second : site.concat(*guest.foot());
}

// Origin map of a composed tree: host origins carried, guest nodes tagged
// with the new instance. For substitution the slot's entry is replaced by the
// filler root; for adjunction the foot's entry is replaced by the site node.
std::map<GornAddress, NodeOrigin> compose_origins(const std::map<GornAddress, NodeOrigin>& host,
                                                  const Composition& c, InstanceId guest) {
    std::map<GornAddress, NodeOrigin> out;
    for (const auto& [p, placed] : c.guest) out[placed] = NodeOrigin{guest, p};
    for (const auto& [a, o] : host) {
        auto it = c.host.find(a);
        if (it != c.host.end()) out[it->second] = o;
    }
    return out;
}

const NodeOrigin& left_origin_at(const DerivedStructure& d, const GornAddress& a) {
    auto it = d.left_origin.find(a);
    if (it == d.left_origin.end()) throw Error(ErrorCode::AddressNotFound, "no left node at " + a.to_string());
    return it->second;
}

void check_fresh_adjunction(std::set<NodeOrigin>& done, const NodeOrigin& o, std::string_view side) {
    if (!done.insert(o).second)
        throw Error(ErrorCode::OperationMismatch, std::string(side) + " node " + o.addr.to_string() + " of instance " +
                                                      std::to_string(o.instance) + " already took an adjunction");
}

}  // namespace

DerivedStructure lstag_compose(const DerivedStructure& host, const GornAddress& left_site,
                               const RightSite& right_site, const LstagPair& guest) {
    const NodeOrigin left_owner = left_origin_at(host, left_site);
    const NodeOrigin right_owner = host.right_origin(right_site);
    const Fragment& target = host.fragments[right_site.fragment];

    const bool subst_left = is_substitution_site(host.left, left_site);
    const bool subst_right = is_substitution_site(target.tree, right_site.addr);
    if (subst_left != subst_right)
        throw Error(ErrorCode::OperationMismatch, "left site " + left_site.to_string() + " and right site " +
                                                      to_string(right_site) + " call for different operations");
    if (subst_right && target.filled(right_site.addr))
        throw Error(ErrorCode::NotASlot, "right slot " + to_string(right_site) + " is already filled");

    // Which live group, if any, licenses this composition.
    std::optional<std::size_t> consumed;
    for (std::size_t i = 0; i < host.live_links.size(); ++i) {
        const auto& g = host.live_links[i];
        const bool has_left = g.left == left_site;
        const bool has_right = std::find(g.right.begin(), g.right.end(), right_site) != g.right.end();
        if (!has_left && !has_right) continue;
        if (g.right.size() > 1)
            throw Error(ErrorCode::SharedGroupSite, "group " + to_string(g) + " is shared; use shared substitution");
        if (!has_left || !has_right)
            throw Error(ErrorCode::LinkNotFound, "site belongs to link group " + to_string(g));
        consumed = i;
    }
    if (!consumed) {
        if (guest.phi.empty())
            throw Error(ErrorCode::LinkNotFound, "no live link between " + left_site.to_string() + " and " +
                                                     to_string(right_site));
        if (left_owner.instance != right_owner.instance)
            throw Error(ErrorCode::LinkNotFound, "unlinked sites belong to different instances");
    }

    DerivedStructure out = host;
    const InstanceId inst = static_cast<InstanceId>(out.instances.size());
    out.instances.push_back(guest.name);

    if (!subst_left) check_fresh_adjunction(out.adjoined_left, left_owner, "left");
    if (!subst_right) check_fresh_adjunction(out.adjoined_right, right_owner, "right");

    // Left side.
    Composition left = compose_one(host.left, left_site, guest.left, subst_left);
    out.left_origin = compose_origins(host.left_origin, left, inst);
    out.left = std::move(left.tree);

    // Right side: substitution hangs a new fragment under the slot, adjunction
    // grows the target fragment in place.
    std::function<RightSite(const RightSite&)> carry_right;
    std::function<RightSite(const GornAddress&)> place_guest;
    if (subst_right) {
        const FragmentId child = static_cast<FragmentId>(out.fragments.size());
        out.fragments[right_site.fragment].edges.push_back({right_site.addr, child});
        out.fragments.push_back(Fragment{guest.right, origins_of(guest.right, inst), {}});
        carry_right = [](const RightSite& s) { return s; };
        place_guest = [child](const GornAddress& p) { return RightSite{child, p}; };
    } else {
        Composition right = adjoin_traced(target.tree, right_site.addr, guest.right);
        Fragment& f = out.fragments[right_site.fragment];
        f.origin = compose_origins(target.origin, right, inst);
        for (auto& e : f.edges) e.slot = carry_host(right, e.slot, right_site.addr);
        const GornAddress site = right_site.addr;
        const GornAddress foot = *guest.right.foot();
        const FragmentId fid = right_site.fragment;
        carry_right = [fid, site, foot](const RightSite& s) {
            return s.fragment == fid ? RightSite{fid, rebase_address(s.addr, site, foot)} : s;
        };
        place_guest = [fid, site, foot, map = right.guest](const GornAddress& p) {
            auto it = map.find(p);
            return RightSite{fid, it != map.end() ? it->second : site.concat(foot)};
        };
        f.tree = std::move(right.tree);
    }

    // Surviving groups, carried into the new coordinates. Sharing candidates
    // are the groups of the instance that owns the right site, in list order.
    std::vector<SharedLinkGroup> groups;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < host.live_links.size(); ++i) {
        if (consumed && *consumed == i) continue;
        const auto& g = host.live_links[i];
        SharedLinkGroup moved{carry_host(left, g.left, left_site), {}};
        bool owned = false;
        for (const auto& s : g.right) {
            owned = owned || host.right_origin(s).instance == right_owner.instance;
            moved.right.push_back(carry_right(s));
        }
        if (owned) candidates.push_back(groups.size());
        groups.push_back(std::move(moved));
    }

    if (!guest.phi.empty()) {
        std::vector<SharedLinkGroup> pool;
        for (auto i : candidates) pool.push_back(groups[i]);
        std::vector<GornAddress> phi;
        for (const auto& l : guest.phi) phi.push_back(l.right);
        auto shared = link_share(pool, phi, place_guest);
        for (std::size_t k = 0; k < candidates.size(); ++k) groups[candidates[k]] = std::move(shared[k]);
    }
    for (const auto& l : guest.delta)
        groups.push_back({carry_guest(left, l.left, left_site, guest.left), {place_guest(l.right)}});
    out.live_links = std::move(groups);

    DerivationRecord rec;
    rec.kind = subst_left ? OpKind::Substitution : OpKind::Adjunction;
    rec.guest = inst;
    rec.left_host = left_owner;
    rec.right_hosts = {right_owner};
    rec.left_site = left_site;
    rec.right_sites = {right_site};
    out.history.push_back(std::move(rec));
    return out;
}

DerivedStructure lstag_compose(const LstagPair& host, const GornAddress& left_site, const GornAddress& right_site,
                               const LstagPair& guest) {
    return lstag_compose(DerivedStructure::start(host), left_site, RightSite{0, right_site}, guest);
}

DerivedStructure shared_substitute(const DerivedStructure& host, const SharedLinkGroup& group,
                                   const LstagPair& guest) {
    auto live = std::find(host.live_links.begin(), host.live_links.end(), group);
    if (live == host.live_links.end()) throw Error(ErrorCode::GroupNotLive, "group " + to_string(group) + " is not live");
    if (!guest.phi.empty())
        throw Error(ErrorCode::CardinalityViolation, "a shared substitution has no host links for phi links of '" +
                                                         guest.name + "'");

    DerivedStructure out = host;
    const InstanceId inst = static_cast<InstanceId>(out.instances.size());
    out.instances.push_back(guest.name);

    const NodeOrigin left_owner = left_origin_at(host, group.left);
    Composition left = substitute_traced(host.left, group.left, guest.left);
    out.left_origin = compose_origins(host.left_origin, left, inst);
    out.left = std::move(left.tree);

    if (guest.right.tree_class() != TreeClass::Initial)
        throw Error(ErrorCode::ClassMismatch, "shared substitution needs an initial right tree");
    const FragmentId child = static_cast<FragmentId>(out.fragments.size());
    std::vector<NodeOrigin> right_hosts;
    for (const auto& s : group.right) {
        const Fragment& f = host.fragments.at(s.fragment);
        const Node& n = f.tree.at(s.addr);
        if (n.kind != NodeKind::Slot || f.filled(s.addr))
            throw Error(ErrorCode::NotASlot, "right site " + to_string(s) + " is not an open slot");
        if (n.label != guest.right.root().label)
            throw Error(ErrorCode::SymbolMismatch,
                        "right slot " + n.label + " at " + to_string(s) + " cannot take " + guest.right.root().label);
        right_hosts.push_back(host.right_origin(s));
        out.fragments[s.fragment].edges.push_back({s.addr, child});
    }
    out.fragments.push_back(Fragment{guest.right, origins_of(guest.right, inst), {}});

    std::vector<SharedLinkGroup> groups;
    for (const auto& g : host.live_links) {
        if (g == group) continue;
        groups.push_back({carry_host(left, g.left, group.left), g.right});
    }
    for (const auto& l : guest.delta)
        groups.push_back({carry_guest(left, l.left, group.left, guest.left), {RightSite{child, l.right}}});
    out.live_links = std::move(groups);

    DerivationRecord rec;
    rec.kind = OpKind::SharedSubstitution;
    rec.guest = inst;
    rec.left_host = left_owner;
    rec.right_hosts = std::move(right_hosts);
    rec.left_site = group.left;
    rec.right_sites = group.right;
    out.history.push_back(std::move(rec));
    return out;
}

std::size_t DerivationGraph::in_degree(InstanceId id) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [&](const DerivationGraphEdge& e) { return e.to == id; }));
}

bool DerivationGraph::is_acyclic() const {
    std::map<InstanceId, std::size_t> indeg;
    for (const auto& n : nodes) indeg[n.id] = 0;
    for (const auto& e : edges) ++indeg[e.to];
    std::vector<InstanceId> ready;
    for (const auto& [id, d] : indeg)
        if (d == 0) ready.push_back(id);
    std::size_t seen = 0;
    while (!ready.empty()) {
        InstanceId id = ready.back();
        ready.pop_back();
        ++seen;
        for (const auto& e : edges)
            if (e.from == id && --indeg[e.to] == 0) ready.push_back(e.to);
    }
    return seen == indeg.size();
}

bool DerivationGraph::is_tree() const {
    if (nodes.empty()) return false;
    for (const auto& n : nodes)
        if (in_degree(n.id) != (n.id == nodes.front().id ? 0u : 1u)) return false;
    return is_acyclic();
}

DerivationTree DerivationGraph::to_tree() const {
    if (!is_tree()) throw Error(ErrorCode::InconsistentHistory, "derivation graph is not a tree");
    std::map<InstanceId, std::string> names;
    for (const auto& n : nodes) names[n.id] = n.name;
    std::function<DerivationTree(InstanceId)> build = [&](InstanceId id) {
        DerivationTree d{names.at(id), {}};
        for (const auto& e : edges)
            if (e.from == id) d.children.push_back({e.addr, build(e.to)});
        return d;
    };
    return build(nodes.front().id);
}

Projections derivation_projections(const std::vector<std::string>& instances,
                                   const std::vector<DerivationRecord>& history) {
    if (instances.empty()) throw Error(ErrorCode::InconsistentHistory, "no start instance");
    Projections p;
    for (InstanceId i = 0; i < instances.size(); ++i) p.right.nodes.push_back({i, instances[i]});

    std::vector<std::vector<std::pair<GornAddress, InstanceId>>> kids(instances.size());
    std::vector<bool> attached(instances.size(), false);
    attached[0] = true;
    for (const auto& r : history) {
        if (r.guest >= instances.size() || attached[r.guest])
            throw Error(ErrorCode::InconsistentHistory, "instance " + std::to_string(r.guest) + " attached twice");
        if (r.left_host.instance >= instances.size() || !attached[r.left_host.instance])
            throw Error(ErrorCode::InconsistentHistory,
                        "instance " + std::to_string(r.left_host.instance) + " used before it was attached");
        attached[r.guest] = true;
        kids[r.left_host.instance].emplace_back(r.left_host.addr, r.guest);
        for (const auto& h : r.right_hosts) {
            if (h.instance >= instances.size() || !attached[h.instance] || h.instance == r.guest)
                throw Error(ErrorCode::InconsistentHistory, "right host instance " + std::to_string(h.instance) +
                                                                " is not attached");
            p.right.edges.push_back({h.instance, r.guest, h.addr, r.kind});
        }
    }
    std::function<DerivationTree(InstanceId)> build = [&](InstanceId id) {
        DerivationTree d{instances[id], {}};
        for (const auto& [addr, child] : kids[id]) d.children.push_back({addr, build(child)});
        return d;
    };
    p.left = build(0);
    return p;
}

std::string derivation_key(const std::vector<std::string>& instances, const std::vector<DerivationRecord>& history) {
    // Instances are named by their path in the left derivation tree, which
    // does not depend on the order the operations were applied in.
    const Projections p = derivation_projections(instances, history);
    std::vector<std::string> path(instances.size());
    path[0] = instances[0];
    for (const auto& r : history)
        path[r.guest] = path[r.left_host.instance] + "/" + r.left_host.addr.to_string() + ":" + instances[r.guest];
    std::vector<std::string> edges;
    for (const auto& e : p.right.edges) edges.push_back(path[e.from] + " @" + e.addr.to_string() + " -> " + path[e.to]);
    std::sort(edges.begin(), edges.end());
    std::string out = canonical_string(p.left) + " |";
    for (const auto& e : edges) out += " [" + e + "]";
    return out;
}

namespace {

std::optional<GornAddress> find_left(const DerivedStructure& d, const NodeOrigin& o) {
    for (const auto& [a, origin] : d.left_origin)
        if (origin == o) return a;
    return std::nullopt;
}

std::optional<RightSite> find_right(const DerivedStructure& d, const NodeOrigin& o) {
    for (FragmentId f = 0; f < d.fragments.size(); ++f)
        for (const auto& [a, origin] : d.fragments[f].origin)
            if (origin == o) return RightSite{f, a};
    return std::nullopt;
}

}  // namespace

DerivedStructure run_script(const LstagGrammar& grammar, const DerivationScript& script) {
    if (script.start.empty()) throw Error(ErrorCode::ParseError, "script names no start pair");
    DerivedStructure d = DerivedStructure::start(grammar.at(instance_name(script.start)));
    std::map<std::string, InstanceId> tokens{{script.start, 0}};
    for (const auto& step : script.steps) {
        const std::string where = "line " + std::to_string(step.line) + ": ";
        try {
            auto host = tokens.find(step.host);
            if (host == tokens.end()) throw Error(ErrorCode::ParseError, "'" + step.host + "' not introduced yet");
            if (tokens.count(step.guest)) throw Error(ErrorCode::ParseError, "'" + step.guest + "' already used");
            const LstagPair& guest = grammar.at(instance_name(step.guest));
            auto left = find_left(d, {host->second, step.left});
            if (!left)
                throw Error(ErrorCode::AddressNotFound, "'" + step.host + "' has no left node " + step.left.to_string());
            if (step.right) {
                auto right = find_right(d, {host->second, *step.right});
                if (!right)
                    throw Error(ErrorCode::AddressNotFound,
                                "'" + step.host + "' has no right node " + step.right->to_string());
                d = lstag_compose(d, *left, *right, guest);
            } else {
                auto g = std::find_if(d.live_links.begin(), d.live_links.end(),
                                      [&](const SharedLinkGroup& grp) { return grp.left == *left; });
                if (g == d.live_links.end())
                    throw Error(ErrorCode::LinkNotFound,
                                "no live link at '" + step.host + "' " + step.left.to_string());
                d = g->right.size() > 1 ? shared_substitute(d, *g, guest) : lstag_compose(d, *left, g->right[0], guest);
            }
            tokens.emplace(step.guest, d.history.back().guest);
        } catch (const Error& e) {
            throw Error(e.code(), where + e.message());
        }
    }
    return d;
}

}  // namespace lstag
