#pragma once

// Constrained random tuple-set generation and verification. Generated sets
// are balanced by construction: every item appears floor(n*m/N) or
// ceil(n*m/N) times, no item twice in one tuple.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bwskit/model.hpp"

namespace bwskit {

struct DesignSpec {
    int tuple_size = 4;           // n, >= 2
    std::int64_t tuple_count = 0;  // m, >= 1
    std::uint64_t seed = 0;
};

struct DesignReport {
    std::int64_t tuple_count = 0;
    int tuple_size = 0;
    std::int64_t item_count = 0;

    // Per-item appearance counts, including zero rows for items never seen.
    // Unknown ids appearing in tuples are counted here too and listed below.
    std::map<std::string, std::int64_t> appearances;
    std::int64_t min_appearances = 0;
    std::int64_t max_appearances = 0;
    std::int64_t appearance_sum = 0;  // equals sum of tuple arities

    std::int64_t within_tuple_duplicates = 0;  // duplicated slots across all tuples
    std::int64_t duplicate_tuples = 0;         // tuples minus distinct unordered member sets
    std::vector<std::string> unknown_item_ids;

    // Co-occurrence count of unordered item pairs -> number of such pairs.
    // The zero bucket covers every pair of known items never seen together.
    std::map<std::int64_t, std::int64_t> pair_cooccurrence;

    bool balanced() const { return max_appearances - min_appearances <= 1; }
};

// Deterministic in (items order, spec.seed). The algorithm concatenates
// ceil(n*m/N) seeded shuffles of the item list, truncates to n*m slots,
// chunks into m tuples, then repairs within-tuple duplicates by swapping
// with later slots (bounded sweeps), and finally runs one swap pass to
// split tuples that are identical as unordered sets. Leftover identical
// tuples are possible only when combinatorially unavoidable; use
// verify_tuple_set to inspect. Tuple ids are "t" plus a 1-based,
// zero-padded ordinal.
//
// Throws std::invalid_argument when the item set is smaller than the tuple
// size or the spec is malformed, std::runtime_error when duplicate repair
// fails to converge.
TupleSet generate_tuples(const ItemSet& items, const DesignSpec& spec);

DesignReport verify_tuple_set(const TupleSet& tuples, const ItemSet& items);

}  // namespace bwskit
