#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lstag {

// Path of 1-based child indices from the root. The empty path is the root and
// prints as "ε"; other addresses print dot-joined ("2.2").
//
// Ordering is lexicographic on the path, so a prefix sorts before all of its
// extensions and the order coincides with a pre-order walk of the tree.
class GornAddress {
public:
    GornAddress() = default;
    GornAddress(std::initializer_list<std::uint32_t> path);
    explicit GornAddress(std::vector<std::uint32_t> path);

    static GornAddress root() { return {}; }

    // Accepts "ε", "e" or "" for the root and dot-joined positive integers
    // otherwise. Returns nullopt on anything else.
    static std::optional<GornAddress> parse(std::string_view text);

    bool is_root() const noexcept { return path_.empty(); }
    std::size_t depth() const noexcept { return path_.size(); }
    std::span<const std::uint32_t> path() const noexcept { return path_; }
    std::uint32_t last() const { return path_.back(); }

    GornAddress child(std::uint32_t k) const;
    GornAddress parent() const;
    GornAddress concat(const GornAddress& suffix) const;

    // True when `this` is a (non-strict) prefix of `other`.
    bool is_prefix_of(const GornAddress& other) const noexcept;
    bool is_strict_prefix_of(const GornAddress& other) const noexcept {
        return depth() < other.depth() && is_prefix_of(other);
    }

    // The remainder of `this` after removing `prefix`; `prefix` must be a
    // prefix of `this`.
    GornAddress suffix_after(const GornAddress& prefix) const;

    std::string to_string() const;

    auto operator<=>(const GornAddress&) const = default;
    bool operator==(const GornAddress&) const = default;

private:
    std::vector<std::uint32_t> path_;
};

inline std::ostream& operator<<(std::ostream& os, const GornAddress& a) { return os << a.to_string(); }

// Where a node ends up after adjoining an auxiliary tree whose foot is at
// `foot` into the node at `site`. Nodes at or below the site move under the
// foot; everything else stays put.
GornAddress rebase_address(const GornAddress& orig, const GornAddress& site, const GornAddress& foot);

}  // namespace lstag
