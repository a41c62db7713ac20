#include "trieopt/prefix_label.hpp"

#include <algorithm>
#include <charconv>

#include "trieopt/errors.hpp"

namespace trieopt {

PrefixLabel::PrefixLabel(std::vector<std::uint32_t> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw InvalidInputError("prefix label must be non-empty");
    }
}

PrefixLabel PrefixLabel::parse(std::string_view text) {
    std::vector<std::uint32_t> symbols;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dot = std::min(text.find('.', pos), text.size());
        const std::string_view part = text.substr(pos, dot - pos);
        std::uint32_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
            throw ParseError("invalid prefix label '" + std::string(text) + "'");
        }
        symbols.push_back(value);
        pos = dot + 1;
    }
    return PrefixLabel(std::move(symbols));
}

PrefixLabel PrefixLabel::child(std::uint32_t suffix) const {
    std::vector<std::uint32_t> symbols = symbols_;
    symbols.push_back(suffix);
    return PrefixLabel(std::move(symbols));
}

PrefixLabel PrefixLabel::parent() const {
    if (symbols_.size() < 2) {
        throw InvalidInputError("root label has no parent");
    }
    return PrefixLabel(std::vector<std::uint32_t>(symbols_.begin(), symbols_.end() - 1));
}

bool PrefixLabel::is_prefix_of(const PrefixLabel& other) const {
    return symbols_.size() <= other.symbols_.size() &&
           std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string PrefixLabel::str() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i > 0) out += '.';
        out += std::to_string(symbols_[i]);
    }
    return out;
}

int common_prefix_length(const PrefixLabel& a, const PrefixLabel& b) {
    const int n = std::min(a.length(), b.length());
    int len = 0;
    while (len < n && a.symbol(len) == b.symbol(len)) ++len;
    return len;
}

int label_distance(const PrefixLabel& a, const PrefixLabel& b) {
    const int common = common_prefix_length(a, b);
    return (a.length() - common) + (b.length() - common);
}

} // namespace trieopt
