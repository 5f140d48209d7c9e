#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bwskit/model.hpp"

namespace bwskit {

enum class ScoreMethod { bws, rs };

std::string to_string(ScoreMethod method);
ScoreMethod score_method_from_string(const std::string& name);

// One scored item. BWS fills score/n_best/n_worst/n_appearances; RS fills
// score (the mean), sd, and n_ratings.
struct ScoreEntry {
    std::string item_id;
    double score = 0.0;
    double sd = 0.0;
    std::int64_t n_best = 0;
    std::int64_t n_worst = 0;
    std::int64_t n_appearances = 0;
    std::int64_t n_ratings = 0;
};

struct ScoreTable {
    ScoreMethod method = ScoreMethod::bws;
    bool normalized = false;
    std::vector<ScoreEntry> entries;  // sorted by item_id

    const ScoreEntry* find(const std::string& item_id) const;
};

// Counting procedure: score = (n_best - n_worst) / n_appearances, where
// n_appearances counts responses whose tuple contains the item. Items that
// never appear in an answered tuple are absent from the table. Responses are
// validated against the tuple set first; the first violation is thrown.
ScoreTable score_bws(const TupleSet& tuples, std::span<const BwsResponse> responses);

// Mean and population standard deviation of each item's ratings. Ratings
// outside the scale are rejected.
ScoreTable score_rs(std::span<const RsResponse> responses, const ScaleConfig& scale);

// Affine map onto [0,1]. Source range is [-1,1] for BWS and the scale for RS;
// sd is divided by the range width. Rejects tables already normalized.
ScoreTable normalize_scores(const ScoreTable& table, const ScaleConfig& scale);

struct RankedItem {
    std::string item_id;
    double score = 0.0;
    double rank = 0.0;  // 1 = highest score; ties share the average position
};

// Ranks sorted by descending score, then item id for equal-score listing
// order. Ranks of tied scores are averaged.
std::vector<RankedItem> rank_items(const ScoreTable& table);

struct BwsGold {
    std::string tuple_id;
    std::string gold_best;
    std::string gold_worst;
};

struct RsGoldInterval {
    std::string item_id;
    int min_rating = 0;
    int max_rating = 0;
};

struct AnnotatorGoldStats {
    std::string annotator_id;
    std::int64_t gold_seen = 0;
    std::int64_t gold_correct = 0;
    double accuracy = 1.0;  // correct / seen; 1.0 when no gold was seen
    bool rejected = false;
};

struct BwsGoldFilterResult {
    std::vector<BwsResponse> retained;
    std::vector<AnnotatorGoldStats> annotators;  // sorted by annotator_id
};

struct RsGoldFilterResult {
    std::vector<RsResponse> retained;
    std::vector<AnnotatorGoldStats> annotators;
};

// Each response to a gold tuple contributes two checks, one for the best
// pick and one for the worst. Annotators with accuracy below the threshold
// lose all of their responses; annotators who met no gold are retained and
// show up with gold_seen = 0. Throws when `gold` is empty.
BwsGoldFilterResult filter_gold_bws(std::span<const BwsResponse> responses,
                                    std::span<const BwsGold> gold,
                                    double threshold = 0.70);

// RS variant: one check per rating of a gold item, correct when the rating
// falls inside the acceptable interval.
RsGoldFilterResult filter_gold_rs(std::span<const RsResponse> responses,
                                  std::span<const RsGoldInterval> gold,
                                  double threshold = 0.70);

// Gold tuples must reference members of their tuple with best != worst.
// Throws invalid_argument naming the first offending tuple.
void validate_bws_gold(std::span<const BwsGold> gold, const TupleSet& tuples);

// Gold intervals must lie within the scale with min <= max.
void validate_rs_gold(std::span<const RsGoldInterval> gold, const ScaleConfig& scale);

}  // namespace bwskit
