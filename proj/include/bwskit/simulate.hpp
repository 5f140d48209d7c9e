#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bwskit/design.hpp"
#include "bwskit/model.hpp"
#include "bwskit/reliability.hpp"
#include "bwskit/scoring.hpp"

namespace bwskit {

// Ground truth the synthetic annotators perceive. Scores live on [-1,1];
// each item's score comes from a stream derived from (seed, item id), so a
// world is a pure function of its seed and the item ids.
struct LatentWorld {
    std::uint64_t seed = 0;
    std::unordered_map<std::string, double> true_scores;

    double true_score(const std::string& item_id) const;
};

LatentWorld make_world(const ItemSet& items, std::uint64_t seed);

// Thurstonian annotator: every judgment perceives true_score + N(0, sd).
// rs_bias_sd sets a per-annotator constant offset on the rating scale,
// modelling scale region bias; BWS judgments are unaffected by it.
struct AnnotatorModel {
    double perception_noise_sd = 0.25;
    double rs_bias_sd = 0.15;
    std::int64_t annotator_count = 20;
};

// k annotators per tuple, assigned round-robin. One shared perceived-value
// draw per (tuple, encounter) feeds both picks: best = argmax, worst =
// argmin of the remaining members, ties to the lowest item id.
std::vector<BwsResponse> simulate_bws(const LatentWorld& world, const TupleSet& tuples,
                                      std::int64_t k, const AnnotatorModel& model,
                                      std::uint64_t seed);

// k ratings per item: clamp(round(affine(true_score) + bias + noise)) where
// affine maps [-1,1] onto the scale and noise sd is scaled by range/2.
std::vector<RsResponse> simulate_rs(const LatentWorld& world, const ItemSet& items,
                                    std::int64_t k, const AnnotatorModel& model,
                                    const ScaleConfig& scale, std::uint64_t seed);

struct SweepCell {
    std::int64_t budget = 0;  // annotations per half-set, in units of N
    ScoreMethod method = ScoreMethod::bws;
    bool skipped = false;
    std::string skip_reason;
    ShrReport report;  // empty when skipped
};

struct SweepOptions {
    std::vector<std::int64_t> budgets;  // multiples of N
    std::int64_t trials = 100;
    std::uint64_t seed = 0;
};

// For each budget b, simulates fresh responses worth 2bN annotations per
// method (so each half-set holds bN) and runs split-half reliability on
// both. The two methods share one per-budget trial seed schedule, making
// their per-trial correlations a paired sample. Budgets where the BWS
// response count does not divide evenly over the tuples, or where any unit
// would get fewer than 2 responses, produce a skipped cell instead.
std::vector<SweepCell> run_budget_sweep(const LatentWorld& world, const ItemSet& items,
                                        const DesignSpec& design, const AnnotatorModel& model,
                                        const ScaleConfig& scale, const SweepOptions& options);

}  // namespace bwskit
