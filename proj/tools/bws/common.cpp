#include "common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bwskit/version.hpp"

namespace bwscli {

bwskit::ScaleConfig parse_scale(const std::string& text) {
    const std::size_t colon = text.find(':', 1);  // position 0 may hold a minus sign
    if (colon == std::string::npos) {
        throw std::invalid_argument("invalid scale '" + text + "' (expected lo:hi)");
    }
    int lo = 0;
    int hi = 0;
    const char* begin = text.data();
    const char* mid = begin + colon;
    const char* end = begin + text.size();
    auto lo_result = std::from_chars(begin, mid, lo);
    auto hi_result = std::from_chars(mid + 1, end, hi);
    if (lo_result.ec != std::errc() || lo_result.ptr != mid || hi_result.ec != std::errc() ||
        hi_result.ptr != end) {
        throw std::invalid_argument("invalid scale '" + text + "' (expected lo:hi)");
    }
    return bwskit::make_scale(lo, hi);
}

std::int64_t resolve_m(const std::string& expr, std::size_t item_count) {
    if (expr.empty()) {
        throw std::invalid_argument("empty tuple-count expression");
    }
    const char* begin = expr.data();
    const char* end = begin + expr.size();
    if (expr.back() == 'N' || expr.back() == 'n') {
        double factor = 1.0;
        if (expr.size() > 1) {
            auto result = std::from_chars(begin, end - 1, factor);
            if (result.ec != std::errc() || result.ptr != end - 1) {
                throw std::invalid_argument("invalid tuple-count expression '" + expr + "'");
            }
        }
        const double exact = factor * static_cast<double>(item_count);
        const std::int64_t m = std::llround(exact);
        if (std::fabs(exact - static_cast<double>(m)) > 1e-6) {
            throw std::invalid_argument("tuple-count expression '" + expr +
                                        "' is not an integer for N=" +
                                        std::to_string(item_count));
        }
        return m;
    }
    std::int64_t m = 0;
    auto result = std::from_chars(begin, end, m);
    if (result.ec != std::errc() || result.ptr != end) {
        throw std::invalid_argument("invalid tuple-count expression '" + expr + "'");
    }
    return m;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string part = text.substr(start, comma - start);
        std::int64_t value = 0;
        auto result = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || result.ec != std::errc() ||
            result.ptr != part.data() + part.size()) {
            throw std::invalid_argument("invalid integer list '" + text + "'");
        }
        values.push_back(value);
        start = comma + 1;
    }
    return values;
}

bwskit::ItemSet synthetic_items(std::int64_t count) {
    if (count < 1) {
        throw std::invalid_argument("item count must be at least 1");
    }
    const int width = static_cast<int>(std::to_string(count).size());
    std::vector<bwskit::Item> items;
    items.reserve(static_cast<std::size_t>(count));
    char buf[32];
    for (std::int64_t i = 1; i <= count; ++i) {
        std::snprintf(buf, sizeof(buf), "i%0*lld", width, static_cast<long long>(i));
        items.push_back({buf, buf, ""});
    }
    return bwskit::ItemSet(std::move(items));
}

bwskit::Metadata base_meta(const std::string& subcommand) {
    bwskit::Metadata meta;
    meta.add("version", std::string(bwskit::kVersion));
    meta.add("subcommand", subcommand);
    return meta;
}

}  // namespace bwscli
