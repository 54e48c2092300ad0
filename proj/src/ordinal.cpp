#include "cs/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cs/error.hpp"

namespace cs {

std::string ordinal_to_string(ordinal a) {
    std::uint64_t b = block_of(a);
    std::uint64_t n = offset_of(a);
    if (b == 0) return std::to_string(n);
    std::string out = "w";
    if (b > 1) out += std::to_string(b);
    if (n > 0) out += "+" + std::to_string(n);
    return out;
}

std::optional<ordinal> parse_ordinal(const std::string& raw) {
    std::string text;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (std::isspace(c)) continue;
        // omega sign and middle dot in UTF-8
        if (c == 0xCF && i + 1 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x89) {
            text += 'w';
            ++i;
            continue;
        }
        if (c == 0xC2 && i + 1 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0xB7) {
            ++i;
            continue;
        }
        if (c == '*' || c == '.') continue;
        text += static_cast<char>(c);
    }
    if (text.empty()) return std::nullopt;
    auto parse_num = [](const std::string& s, std::uint64_t& out) {
        if (s.empty() || s.size() > 10) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        out = std::stoull(s);
        return out <= offset_mask;
    };
    std::uint64_t block = 0, off = 0;
    if (text[0] == 'w') {
        std::string rest = text.substr(1);
        std::string bpart = rest, opart;
        auto plus = rest.find('+');
        if (plus != std::string::npos) {
            bpart = rest.substr(0, plus);
            opart = rest.substr(plus + 1);
            if (!parse_num(opart, off)) return std::nullopt;
        }
        if (bpart.empty()) {
            block = 1;
        } else if (!parse_num(bpart, block) || block == 0) {
            return std::nullopt;
        }
    } else if (!parse_num(text, off)) {
        return std::nullopt;
    }
    return make_ordinal(block, off);
}

bool is_strictly_sorted(const ord_set& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a[i - 1] < a[i])) return false;
    return true;
}

ord_set normalized(ord_set a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool contains(const ord_set& a, ordinal x) { return std::binary_search(a.begin(), a.end(), x); }

bool is_subset(const ord_set& a, const ord_set& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_initial_segment(const ord_set& a, const ord_set& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

ord_set set_union(const ord_set& a, const ord_set& b) {
    ord_set out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ord_set set_intersection(const ord_set& a, const ord_set& b) {
    ord_set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ord_set set_difference(const ord_set& a, const ord_set& b) {
    ord_set out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool precedes(const ord_set& a, const ord_set& b) {
    return a.empty() || b.empty() || a.back() < b.front();
}

std::size_t index_of(const ord_set& a, ordinal x) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    if (it == a.end() || *it != x) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(it - a.begin());
}

ord_set select(const ord_set& a, const std::vector<std::uint64_t>& idx) {
    ord_set out;
    out.reserve(idx.size());
    for (auto i : idx) {
        if (i >= a.size()) fail(errc::bound_violation, "index " + std::to_string(i) + " outside a set of size " + std::to_string(a.size()));
        out.push_back(a[i]);
    }
    return normalized(std::move(out));
}

ord_set below(const ord_set& a, ordinal bound) {
    return ord_set(a.begin(), std::lower_bound(a.begin(), a.end(), bound));
}

ord_set at_or_above(const ord_set& a, ordinal bound) {
    return ord_set(std::lower_bound(a.begin(), a.end(), bound), a.end());
}

ord_set iota_set(ordinal from, ordinal to) {
    ord_set out;
    if (to > from) out.reserve(to - from);
    for (ordinal x = from; x < to; ++x) out.push_back(x);
    return out;
}

ord_set transport_image(const ord_set& dom, const ord_set& cod, const ord_set& s) {
    if (dom.size() != cod.size()) fail(errc::rank_mismatch, "transport between sets of different size");
    ord_set out;
    out.reserve(s.size());
    for (ordinal x : s) {
        std::size_t i = index_of(dom, x);
        if (i == static_cast<std::size_t>(-1)) fail(errc::not_subscheme, "transported set is not inside the domain");
        out.push_back(cod[i]);
    }
    return out;
}

std::string to_string(const ord_set& a) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << ordinal_to_string(a[i]);
    }
    os << '}';
    return os.str();
}

std::size_t ord_set_hash::operator()(const ord_set& a) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (ordinal x : a) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ a.size());
}

}  // namespace cs
