#ifndef TRIEOPT_PREFIX_LABEL_HPP
#define TRIEOPT_PREFIX_LABEL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trieopt {

/// A node's network address in a prefix tree: one symbol per tree level.
///
/// A child's label is always its parent's label with exactly one symbol
/// appended, and sibling labels differ in their final symbol. The root's label
/// has length one. Symbols are unbounded non-negative integers, so any fan-out
/// is representable; the rendered form is dot-separated ("0.2.2.1").
class PrefixLabel {
public:
    /// The canonical root label, the single symbol 0.
    static PrefixLabel root() { return PrefixLabel(std::vector<std::uint32_t>{0}); }

    /// Throws InvalidInputError if `symbols` is empty.
    explicit PrefixLabel(std::vector<std::uint32_t> symbols);

    /// Parses the dot-separated rendering, e.g. "0.2.2.1".
    static PrefixLabel parse(std::string_view text);

    /// This label with one more symbol appended (a child address).
    PrefixLabel child(std::uint32_t suffix) const;

    /// The label with the final symbol removed. Throws on a length-1 label.
    PrefixLabel parent() const;

    int length() const { return static_cast<int>(symbols_.size()); }
    std::uint32_t symbol(int level) const { return symbols_.at(static_cast<std::size_t>(level)); }
    std::uint32_t last_symbol() const { return symbols_.back(); }
    const std::vector<std::uint32_t>& symbols() const { return symbols_; }

    /// True when this label is a (not necessarily proper) prefix of `other`.
    bool is_prefix_of(const PrefixLabel& other) const;

    std::string str() const;

    friend bool operator==(const PrefixLabel&, const PrefixLabel&) = default;
    friend std::strong_ordering operator<=>(const PrefixLabel& a, const PrefixLabel& b) {
        return a.symbols_ <=> b.symbols_;
    }

private:
    std::vector<std::uint32_t> symbols_;
};

/// Length of the longest common prefix of the two labels.
int common_prefix_length(const PrefixLabel& a, const PrefixLabel& b);

/// Hop count between the tree positions the two labels address:
/// each node climbs to the closest common ancestor, so the distance is the sum
/// of both label lengths minus twice the common prefix length.
int label_distance(const PrefixLabel& a, const PrefixLabel& b);

} // namespace trieopt

#endif
