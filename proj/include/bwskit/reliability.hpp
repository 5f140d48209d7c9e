#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwskit/model.hpp"
#include "bwskit/scoring.hpp"

namespace bwskit {

enum class UnitKind { per_item, per_tuple };

std::string to_string(UnitKind kind);

// Splits responses unit by unit (per tuple for BWS, per item for RS). Each
// unit's responses are shuffled with a stream derived from (seed, unit id).
// With k given, exactly k go to each half and the rest are dropped; without
// k, the halves differ by at most one response per unit and a single seeded
// coin flip decides which half takes every odd unit's extra. Units with
// fewer than 2 (or 2k) responses raise an error naming the unit.
struct BwsSplit {
    std::vector<BwsResponse> half_a;
    std::vector<BwsResponse> half_b;
};
struct RsSplit {
    std::vector<RsResponse> half_a;
    std::vector<RsResponse> half_b;
};

BwsSplit split_half(std::span<const BwsResponse> responses, std::uint64_t seed,
                    std::optional<std::int64_t> annotations_per_unit = {});
RsSplit split_half(std::span<const RsResponse> responses, std::uint64_t seed,
                   std::optional<std::int64_t> annotations_per_unit = {});

struct ShrTrial {
    std::int64_t trial = 0;  // 1-based
    double rho = 0.0;
    double r = 0.0;
    std::int64_t items_used = 0;     // items scored in both halves
    std::int64_t items_dropped = 0;  // items scored in exactly one half
};

struct ShrOptions {
    std::int64_t trials = 100;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> annotations_per_unit;
};

struct ShrReport {
    ScoreMethod method = ScoreMethod::bws;
    UnitKind unit_kind = UnitKind::per_tuple;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> annotations_per_unit;
    std::int64_t budget = 0;  // annotations per half-set
    std::vector<ShrTrial> per_trial;
    double mean_rho = 0.0;
    double sd_rho = 0.0;
    double mean_r = 0.0;
    double sd_r = 0.0;
};

// Split-half reliability: per trial, split with a seed derived from
// (options.seed, trial index), score both halves, and correlate scores over
// the items present in both. Trial t's derived seed never changes when the
// trial count grows.
ShrReport shr_bws(const TupleSet& tuples, std::span<const BwsResponse> responses,
                  const ShrOptions& options);
ShrReport shr_rs(std::span<const RsResponse> responses, const ScaleConfig& scale,
                 const ShrOptions& options);

struct ComparisonReport {
    double mean_abs_score_diff = 0.0;  // on the shared [0,1] scale
    double mean_abs_rank_diff = 0.0;   // ranks recomputed on the intersection
    double rho = 0.0;
    double r = 0.0;
    std::int64_t item_count = 0;
};

// Both tables must be normalized; the comparison covers the id intersection
// and fails when fewer than 2 items are shared.
ComparisonReport compare_methods(const ScoreTable& a, const ScoreTable& b);

// Per-category breakdowns. Every report starts with an "all terms" row;
// items without a category fall into "(uncategorized)". Categories whose
// analysis cannot run (too few items, undefined correlation) are emitted
// with skipped = true and the reason.
struct SubsetCompareRow {
    std::string category;
    std::int64_t item_count = 0;  // items carrying this category
    bool skipped = false;
    std::string skip_reason;
    ComparisonReport report;
};

std::vector<SubsetCompareRow> subset_compare(const ItemSet& items, const ScoreTable& a,
                                             const ScoreTable& b);

struct SubsetShrRow {
    std::string category;
    std::int64_t item_count = 0;
    bool skipped = false;
    std::string skip_reason;
    double mean_rho = 0.0;
    double mean_r = 0.0;
};

// One split per trial is shared by all categories; each category correlates
// only its own items, so rows are comparable across categories.
std::vector<SubsetShrRow> subset_shr_bws(const ItemSet& items, const TupleSet& tuples,
                                         std::span<const BwsResponse> responses,
                                         const ShrOptions& options);
std::vector<SubsetShrRow> subset_shr_rs(const ItemSet& items,
                                        std::span<const RsResponse> responses,
                                        const ScaleConfig& scale, const ShrOptions& options);

struct ConsistencyBin {
    std::int64_t bin = 0;  // interval / 12h, so bin 0 covers [0h, 12h)
    std::int64_t pair_count = 0;
    double rate = 0.0;
    bool low_support = false;  // fewer than 3 pairs
};

struct ConsistencyReport {
    std::int64_t pair_count = 0;
    std::int64_t inconsistent_count = 0;
    double inconsistency_rate = 0.0;
    double mean_abs_diff = 0.0;  // scale units, over inconsistent pairs only
    std::vector<ConsistencyBin> bins;
};

// Pairs the first two timestamped ratings per (annotator, repeated item) and
// reports how often they disagree, plus the disagreement rate bucketed by
// the time between the two ratings. Throws when no pair qualifies.
ConsistencyReport repeat_consistency(std::span<const RsResponse> responses,
                                     std::span<const std::string> repeated_ids);

struct ShrDifference {
    double mean_difference = 0.0;  // mean over trials of rho_a - rho_b
    double p_value = 1.0;
    std::int64_t resamples = 0;
    std::uint64_t seed = 0;
};

// Two-sided paired sign-flip permutation test on per-trial rho differences.
// Valid only when both reports were produced with the same trial seed
// schedule; trial counts must match.
ShrDifference shr_difference_test(const ShrReport& a, const ShrReport& b,
                                  std::int64_t resamples, std::uint64_t seed);

}  // namespace bwskit
