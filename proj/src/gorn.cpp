#include "lstag/gorn.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "lstag/errors.hpp"

namespace lstag {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::AddressNotFound: return "AddressNotFound";
        case ErrorCode::NotASlot: return "NotASlot";
        case ErrorCode::NotInterior: return "NotInterior";
        case ErrorCode::SymbolMismatch: return "SymbolMismatch";
        case ErrorCode::ClassMismatch: return "ClassMismatch";
        case ErrorCode::IncompleteTree: return "IncompleteTree";
        case ErrorCode::MalformedTree: return "MalformedTree";
        case ErrorCode::UnknownTree: return "UnknownTree";
        case ErrorCode::EdgeAddressInvalid: return "EdgeAddressInvalid";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::OperationMismatch: return "OperationMismatch";
        case ErrorCode::LinkNotFound: return "LinkNotFound";
        case ErrorCode::SharedGroupSite: return "SharedGroupSite";
        case ErrorCode::CardinalityViolation: return "CardinalityViolation";
        case ErrorCode::GroupNotLive: return "GroupNotLive";
        case ErrorCode::InconsistentHistory: return "InconsistentHistory";
        case ErrorCode::NotReflexive: return "NotReflexive";
        case ErrorCode::NotDisjoint: return "NotDisjoint";
        case ErrorCode::EndpointUnresolved: return "EndpointUnresolved";
        case ErrorCode::Discontiguous: return "Discontiguous";
        case ErrorCode::LexicallyDiscontiguous: return "LexicallyDiscontiguous";
        case ErrorCode::BadCorrespondence: return "BadCorrespondence";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

GornAddress::GornAddress(std::initializer_list<std::uint32_t> path) : path_(path) {
    if (std::find(path_.begin(), path_.end(), 0u) != path_.end())
        throw std::invalid_argument("Gorn address components must be >= 1");
}

GornAddress::GornAddress(std::vector<std::uint32_t> path) : path_(std::move(path)) {
    if (std::find(path_.begin(), path_.end(), 0u) != path_.end())
        throw std::invalid_argument("Gorn address components must be >= 1");
}

std::optional<GornAddress> GornAddress::parse(std::string_view text) {
    if (text.empty() || text == "ε" || text == "e") return GornAddress{};
    std::vector<std::uint32_t> path;
    std::size_t pos = 0;
    while (true) {
        auto dot = text.find('.', pos);
        auto part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (part.empty()) return std::nullopt;
        std::uint32_t value = 0;
        auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || end != part.data() + part.size() || value == 0) return std::nullopt;
        path.push_back(value);
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return GornAddress(std::move(path));
}

GornAddress GornAddress::child(std::uint32_t k) const {
    auto p = path_;
    p.push_back(k);
    return GornAddress(std::move(p));
}

GornAddress GornAddress::parent() const {
    if (path_.empty()) throw std::logic_error("root has no parent");
    return GornAddress(std::vector<std::uint32_t>(path_.begin(), path_.end() - 1));
}

GornAddress GornAddress::concat(const GornAddress& suffix) const {
    auto p = path_;
    p.insert(p.end(), suffix.path_.begin(), suffix.path_.end());
    return GornAddress(std::move(p));
}

bool GornAddress::is_prefix_of(const GornAddress& other) const noexcept {
    return depth() <= other.depth() && std::equal(path_.begin(), path_.end(), other.path_.begin());
}

GornAddress GornAddress::suffix_after(const GornAddress& prefix) const {
    if (!prefix.is_prefix_of(*this)) throw std::logic_error("suffix_after: not a prefix");
    return GornAddress(std::vector<std::uint32_t>(path_.begin() + static_cast<std::ptrdiff_t>(prefix.depth()), path_.end()));
}

std::string GornAddress::to_string() const {
    if (path_.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path_[i]);
    }
    return out;
}

GornAddress rebase_address(const GornAddress& orig, const GornAddress& site, const GornAddress& foot) {
    if (!site.is_prefix_of(orig)) return orig;
    return site.concat(foot).concat(orig.suffix_after(site));
}

}  // namespace lstag
