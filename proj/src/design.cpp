#include "bwskit/design.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bwskit/rng.hpp"

namespace bwskit {

namespace {

constexpr int kMaxRepairSweeps = 1000;

// slots hold item indices; tuple t owns slots [t*n, t*n + n).
bool slot_in_tuple(const std::vector<std::size_t>& slots, std::size_t tuple, int n,
                   std::size_t value, std::size_t skip_pos) {
    const std::size_t begin = tuple * static_cast<std::size_t>(n);
    for (std::size_t p = begin; p < begin + static_cast<std::size_t>(n); ++p) {
        if (p != skip_pos && slots[p] == value) return true;
    }
    return false;
}

std::string canonical_key(const std::vector<std::size_t>& slots, std::size_t tuple, int n) {
    std::vector<std::size_t> members(slots.begin() + tuple * n, slots.begin() + (tuple + 1) * n);
    std::sort(members.begin(), members.end());
    std::string key;
    for (std::size_t v : members) {
        key += std::to_string(v);
        key.push_back(':');
    }
    return key;
}

}  // namespace

TupleSet generate_tuples(const ItemSet& items, const DesignSpec& spec) {
    const std::int64_t item_count = static_cast<std::int64_t>(items.size());
    const int n = spec.tuple_size;
    const std::int64_t m = spec.tuple_count;
    if (n < 2) {
        throw std::invalid_argument("tuple size must be at least 2");
    }
    if (m < 1) {
        throw std::invalid_argument("tuple count must be at least 1");
    }
    if (item_count < n) {
        throw std::invalid_argument("item set smaller than tuple size");
    }

    const std::int64_t total_slots = static_cast<std::int64_t>(n) * m;
    const std::int64_t rounds = (total_slots + item_count - 1) / item_count;

    Rng rng(spec.seed);
    std::vector<std::size_t> slots;
    slots.reserve(static_cast<std::size_t>(rounds * item_count));
    std::vector<std::size_t> deck(items.size());
    for (std::int64_t round = 0; round < rounds; ++round) {
        for (std::size_t i = 0; i < deck.size(); ++i) deck[i] = i;
        rng.shuffle(std::span<std::size_t>(deck));
        slots.insert(slots.end(), deck.begin(), deck.end());
    }
    slots.resize(static_cast<std::size_t>(total_slots));

    // Repair within-tuple duplicates by swapping with another slot whose
    // exchange introduces no new duplicate in either tuple. Candidates are
    // scanned forward from p with wrap-around so small item sets, where most
    // viable partners sit earlier in the array, still converge.
    const std::size_t slot_count = slots.size();
    int sweep = 0;
    while (true) {
        bool swapped = false;
        for (std::size_t p = 0; p < slot_count; ++p) {
            const std::size_t t = p / static_cast<std::size_t>(n);
            // Keep the first occurrence, repair later ones.
            bool is_later_duplicate = false;
            for (std::size_t q = t * static_cast<std::size_t>(n); q < p; ++q) {
                if (slots[q] == slots[p]) {
                    is_later_duplicate = true;
                    break;
                }
            }
            if (!is_later_duplicate) continue;
            for (std::size_t step = 1; step < slot_count; ++step) {
                const std::size_t q = (p + step) % slot_count;
                const std::size_t tq = q / static_cast<std::size_t>(n);
                if (tq == t) continue;
                if (slot_in_tuple(slots, t, n, slots[q], p)) continue;
                if (slot_in_tuple(slots, tq, n, slots[p], q)) continue;
                std::swap(slots[p], slots[q]);
                swapped = true;
                break;
            }
        }

        // Check whether any duplicate is left.
        bool remaining = false;
        for (std::size_t p = 0; p < slot_count && !remaining; ++p) {
            const std::size_t t = p / static_cast<std::size_t>(n);
            for (std::size_t q = t * static_cast<std::size_t>(n); q < p; ++q) {
                if (slots[q] == slots[p]) {
                    remaining = true;
                    break;
                }
            }
        }
        if (!remaining) break;
        // A sweep that changed nothing will never change anything.
        if (!swapped || ++sweep >= kMaxRepairSweeps) {
            throw std::runtime_error("tuple generation: duplicate repair did not converge");
        }
    }

    // One pass to split tuples that are identical as unordered sets.
    {
        std::unordered_map<std::string, std::int64_t> key_count;
        std::vector<std::string> keys(static_cast<std::size_t>(m));
        for (std::int64_t t = 0; t < m; ++t) {
            keys[t] = canonical_key(slots, static_cast<std::size_t>(t), n);
            ++key_count[keys[t]];
        }
        for (std::int64_t t = 0; t < m; ++t) {
            if (key_count[keys[t]] <= 1) continue;
            const std::size_t begin = static_cast<std::size_t>(t) * n;
            bool fixed = false;
            for (std::size_t p = begin; p < begin + static_cast<std::size_t>(n) && !fixed; ++p) {
                for (std::size_t q = (static_cast<std::size_t>(t) + 1) * n;
                     q < slot_count && !fixed; ++q) {
                    const std::size_t tq = q / static_cast<std::size_t>(n);
                    if (slot_in_tuple(slots, static_cast<std::size_t>(t), n, slots[q], p)) continue;
                    if (slot_in_tuple(slots, tq, n, slots[p], q)) continue;
                    std::swap(slots[p], slots[q]);
                    const std::string new_t = canonical_key(slots, static_cast<std::size_t>(t), n);
                    const std::string new_q = canonical_key(slots, tq, n);
                    --key_count[keys[t]];
                    --key_count[keys[tq]];
                    if (key_count[new_t] == 0 && key_count[new_q] == 0 && new_t != new_q) {
                        ++key_count[new_t];
                        ++key_count[new_q];
                        keys[t] = new_t;
                        keys[tq] = new_q;
                        fixed = true;
                    } else {
                        ++key_count[keys[t]];
                        ++key_count[keys[tq]];
                        std::swap(slots[p], slots[q]);
                    }
                }
            }
            // Unfixable collisions stay; verify_tuple_set reports them.
        }
    }

    TupleSet out;
    out.tuple_size = n;
    out.tuples.reserve(static_cast<std::size_t>(m));
    const int width = static_cast<int>(std::to_string(m).size());
    char buf[32];
    for (std::int64_t t = 0; t < m; ++t) {
        Tuple4 tuple;
        std::snprintf(buf, sizeof(buf), "t%0*lld", width, static_cast<long long>(t + 1));
        tuple.tuple_id = buf;
        tuple.members.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            tuple.members.push_back(items.items()[slots[t * n + j]].id);
        }
        out.tuples.push_back(std::move(tuple));
    }
    out.build_index();
    return out;
}

DesignReport verify_tuple_set(const TupleSet& tuples, const ItemSet& items) {
    DesignReport report;
    report.tuple_count = static_cast<std::int64_t>(tuples.count());
    report.tuple_size = tuples.tuple_size;
    report.item_count = static_cast<std::int64_t>(items.size());

    for (const Item& item : items.items()) {
        report.appearances[item.id] = 0;
    }

    std::unordered_set<std::string> unknown;
    std::unordered_map<std::string, std::int64_t> set_keys;
    std::unordered_map<std::string, std::int64_t> pair_counts;

    for (const Tuple4& tuple : tuples.tuples) {
        for (const std::string& id : tuple.members) {
            ++report.appearances[id];
            ++report.appearance_sum;
            if (!items.contains(id)) unknown.insert(id);
        }
        // Duplicated slots within this tuple.
        std::vector<std::string> sorted = tuple.members;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i] == sorted[i - 1]) ++report.within_tuple_duplicates;
        }
        std::string key;
        for (const std::string& id : sorted) {
            key += id;
            key.push_back('\x1f');
        }
        ++set_keys[key];
        // Unordered pairs of distinct member slots.
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            for (std::size_t j = i + 1; j < sorted.size(); ++j) {
                if (sorted[i] == sorted[j]) continue;
                ++pair_counts[sorted[i] + '\x1f' + sorted[j]];
            }
        }
    }

    for (const auto& [key, count] : set_keys) {
        report.duplicate_tuples += count - 1;
    }
    report.unknown_item_ids.assign(unknown.begin(), unknown.end());
    std::sort(report.unknown_item_ids.begin(), report.unknown_item_ids.end());

    report.min_appearances = 0;
    report.max_appearances = 0;
    bool first = true;
    for (const auto& [id, count] : report.appearances) {
        if (first) {
            report.min_appearances = report.max_appearances = count;
            first = false;
        } else {
            report.min_appearances = std::min(report.min_appearances, count);
            report.max_appearances = std::max(report.max_appearances, count);
        }
    }

    for (const auto& [pair, count] : pair_counts) {
        ++report.pair_cooccurrence[count];
    }
    // Pairs of known items never seen together.
    const std::int64_t known = report.item_count;
    const std::int64_t all_pairs = known * (known - 1) / 2;
    std::int64_t seen_known_pairs = 0;
    for (const auto& [pair, count] : pair_counts) {
        const std::size_t sep = pair.find('\x1f');
        if (items.contains(pair.substr(0, sep)) && items.contains(pair.substr(sep + 1))) {
            ++seen_known_pairs;
        }
    }
    if (all_pairs - seen_known_pairs > 0) {
        report.pair_cooccurrence[0] = all_pairs - seen_known_pairs;
    }
    return report;
}

}  // namespace bwskit
