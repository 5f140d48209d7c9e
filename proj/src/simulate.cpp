#include "bwskit/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "bwskit/rng.hpp"

namespace bwskit {

double LatentWorld::true_score(const std::string& item_id) const {
    auto it = true_scores.find(item_id);
    if (it == true_scores.end()) {
        throw std::invalid_argument("no true score for item " + item_id);
    }
    return it->second;
}

LatentWorld make_world(const ItemSet& items, std::uint64_t seed) {
    LatentWorld world;
    world.seed = seed;
    world.true_scores.reserve(items.size());
    for (const Item& item : items.items()) {
        Rng rng(mix_seed(seed, fnv1a64(item.id)));
        world.true_scores[item.id] = rng.uniform(-1.0, 1.0);
    }
    return world;
}

namespace {

// Stream for the e-th encounter of a unit; independent of processing order.
std::uint64_t encounter_seed(std::uint64_t seed, const std::string& unit_id, std::int64_t e) {
    return mix_seed(mix_seed(seed, fnv1a64(unit_id)), static_cast<std::uint64_t>(e));
}

std::string annotator_name(std::int64_t index) {
    return "a" + std::to_string(index);
}

void check_model(const AnnotatorModel& model) {
    if (!(model.perception_noise_sd >= 0.0) || !std::isfinite(model.perception_noise_sd)) {
        throw std::invalid_argument("perception noise sd must be finite and non-negative");
    }
    if (!(model.rs_bias_sd >= 0.0) || !std::isfinite(model.rs_bias_sd)) {
        throw std::invalid_argument("rating bias sd must be finite and non-negative");
    }
    if (model.annotator_count < 1) {
        throw std::invalid_argument("annotator count must be at least 1");
    }
}

}  // namespace

std::vector<BwsResponse> simulate_bws(const LatentWorld& world, const TupleSet& tuples,
                                      std::int64_t k, const AnnotatorModel& model,
                                      std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("responses per tuple must be at least 1");
    }
    check_model(model);

    std::vector<BwsResponse> responses;
    responses.reserve(tuples.count() * static_cast<std::size_t>(k));
    std::vector<double> perceived;
    for (std::size_t ti = 0; ti < tuples.count(); ++ti) {
        const Tuple4& tuple = tuples.tuples[ti];
        for (std::int64_t e = 0; e < k; ++e) {
            Rng rng(encounter_seed(seed, tuple.tuple_id, e));
            perceived.resize(tuple.members.size());
            for (std::size_t i = 0; i < tuple.members.size(); ++i) {
                perceived[i] = world.true_score(tuple.members[i]) +
                               rng.normal(0.0, model.perception_noise_sd);
            }
            std::size_t best = 0;
            for (std::size_t i = 1; i < perceived.size(); ++i) {
                if (perceived[i] > perceived[best] ||
                    (perceived[i] == perceived[best] &&
                     tuple.members[i] < tuple.members[best])) {
                    best = i;
                }
            }
            std::size_t worst = best == 0 ? 1 : 0;
            for (std::size_t i = 0; i < perceived.size(); ++i) {
                if (i == best) continue;
                if (perceived[i] < perceived[worst] ||
                    (perceived[i] == perceived[worst] &&
                     tuple.members[i] < tuple.members[worst])) {
                    worst = i;
                }
            }
            BwsResponse response;
            response.tuple_id = tuple.tuple_id;
            response.annotator_id = annotator_name(
                (static_cast<std::int64_t>(ti) * k + e) % model.annotator_count);
            response.best_id = tuple.members[best];
            response.worst_id = tuple.members[worst];
            responses.push_back(std::move(response));
        }
    }
    return responses;
}

std::vector<RsResponse> simulate_rs(const LatentWorld& world, const ItemSet& items,
                                    std::int64_t k, const AnnotatorModel& model,
                                    const ScaleConfig& scale, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("ratings per item must be at least 1");
    }
    check_model(model);

    const double half_range = scale.range() / 2.0;
    std::vector<double> biases(static_cast<std::size_t>(model.annotator_count));
    for (std::int64_t j = 0; j < model.annotator_count; ++j) {
        Rng rng(mix_seed(mix_seed(seed, fnv1a64("annotator-bias")),
                         static_cast<std::uint64_t>(j)));
        biases[static_cast<std::size_t>(j)] = rng.normal(0.0, model.rs_bias_sd * half_range);
    }

    std::vector<RsResponse> responses;
    responses.reserve(items.size() * static_cast<std::size_t>(k));
    for (std::size_t ii = 0; ii < items.size(); ++ii) {
        const Item& item = items.items()[ii];
        const double mapped =
            scale.min + (world.true_score(item.id) + 1.0) / 2.0 * scale.range();
        for (std::int64_t e = 0; e < k; ++e) {
            Rng rng(encounter_seed(seed, item.id, e));
            const std::int64_t j =
                (static_cast<std::int64_t>(ii) * k + e) % model.annotator_count;
            const double value = mapped + biases[static_cast<std::size_t>(j)] +
                                 rng.normal(0.0, model.perception_noise_sd * half_range);
            const long long rounded = std::llround(value);
            const int rating = static_cast<int>(
                std::clamp<long long>(rounded, scale.min, scale.max));
            RsResponse response;
            response.item_id = item.id;
            response.annotator_id = annotator_name(j);
            response.rating = rating;
            responses.push_back(std::move(response));
        }
    }
    return responses;
}

std::vector<SweepCell> run_budget_sweep(const LatentWorld& world, const ItemSet& items,
                                        const DesignSpec& design, const AnnotatorModel& model,
                                        const ScaleConfig& scale, const SweepOptions& options) {
    check_model(model);
    for (std::int64_t b : options.budgets) {
        if (b < 1) {
            throw std::invalid_argument("budgets must be at least 1N");
        }
    }
    const TupleSet tuples = generate_tuples(items, design);
    const std::int64_t item_count = static_cast<std::int64_t>(items.size());
    const std::int64_t tuple_count = design.tuple_count;

    std::vector<SweepCell> cells;
    for (std::int64_t b : options.budgets) {
        const std::int64_t total = 2 * b * item_count;  // annotations per method
        const std::uint64_t shr_seed = mix_seed(options.seed, static_cast<std::uint64_t>(b));
        const ShrOptions shr_options{options.trials, shr_seed, {}};

        SweepCell bws_cell;
        bws_cell.budget = b;
        bws_cell.method = ScoreMethod::bws;
        if (total % tuple_count != 0) {
            bws_cell.skipped = true;
            bws_cell.skip_reason = "budget does not divide evenly over tuples";
        } else if (total / tuple_count < 2) {
            bws_cell.skipped = true;
            bws_cell.skip_reason = "fewer than 2 responses per tuple";
        } else {
            const std::int64_t k_bws = total / tuple_count;
            const std::uint64_t sim_seed =
                mix_seed(options.seed, fnv1a64("bws-budget-" + std::to_string(b)));
            const std::vector<BwsResponse> responses =
                simulate_bws(world, tuples, k_bws, model, sim_seed);
            bws_cell.report = shr_bws(tuples, responses, shr_options);
        }
        cells.push_back(std::move(bws_cell));

        SweepCell rs_cell;
        rs_cell.budget = b;
        rs_cell.method = ScoreMethod::rs;
        const std::int64_t k_rs = 2 * b;
        const std::uint64_t sim_seed =
            mix_seed(options.seed, fnv1a64("rs-budget-" + std::to_string(b)));
        const std::vector<RsResponse> responses =
            simulate_rs(world, items, k_rs, model, scale, sim_seed);
        rs_cell.report = shr_rs(responses, scale, shr_options);
        cells.push_back(std::move(rs_cell));
    }
    return cells;
}

}  // namespace bwskit
