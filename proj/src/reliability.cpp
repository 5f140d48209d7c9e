#include "bwskit/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bwskit/rng.hpp"
#include "bwskit/stats.hpp"

namespace bwskit {

std::string to_string(UnitKind kind) {
    return kind == UnitKind::per_item ? "per-item" : "per-tuple";
}

namespace {

template <typename Response, typename UnitFn>
std::pair<std::vector<Response>, std::vector<Response>> split_impl(
    std::span<const Response> responses, std::uint64_t seed,
    std::optional<std::int64_t> k, UnitFn&& unit_of) {
    if (k && *k < 1) {
        throw std::invalid_argument("annotations per unit must be at least 1");
    }
    std::unordered_map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        groups[unit_of(responses[i])].push_back(i);
    }
    std::vector<std::string> units;
    units.reserve(groups.size());
    for (const auto& [unit, indices] : groups) units.push_back(unit);
    std::sort(units.begin(), units.end());

    // One coin decides which half takes the extra response of every
    // odd-count unit, keeping per-half multiplicities uniform across units.
    const bool extra_to_a = Rng(seed).coin();

    std::pair<std::vector<Response>, std::vector<Response>> halves;
    for (const std::string& unit : units) {
        std::vector<std::size_t>& indices = groups[unit];
        const std::int64_t count = static_cast<std::int64_t>(indices.size());
        const std::int64_t need = k ? 2 * *k : 2;
        if (count < need) {
            throw std::invalid_argument("unit " + unit + " has " + std::to_string(count) +
                                        " responses; need at least " + std::to_string(need));
        }
        Rng rng(mix_seed(seed, fnv1a64(unit)));
        rng.shuffle(std::span<std::size_t>(indices));
        std::int64_t to_a;
        std::int64_t to_b;
        if (k) {
            to_a = *k;
            to_b = *k;
        } else {
            to_a = count / 2 + ((count % 2 != 0 && extra_to_a) ? 1 : 0);
            to_b = count - to_a;
        }
        for (std::int64_t i = 0; i < to_a; ++i) {
            halves.first.push_back(responses[indices[static_cast<std::size_t>(i)]]);
        }
        for (std::int64_t i = to_a; i < to_a + to_b; ++i) {
            halves.second.push_back(responses[indices[static_cast<std::size_t>(i)]]);
        }
    }
    return halves;
}

struct TrialCorrelation {
    double rho = 0.0;
    double r = 0.0;
    std::int64_t used = 0;
    std::int64_t dropped = 0;
};

// Walks two tables sorted by item id; `keep` limits which shared items enter
// the correlation (nullptr keeps all).
TrialCorrelation correlate_tables(const ScoreTable& a, const ScoreTable& b,
                                  const std::unordered_set<std::string>* keep) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::int64_t dropped = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        const int cmp = a.entries[i].item_id.compare(b.entries[j].item_id);
        if (cmp == 0) {
            if (keep == nullptr || keep->contains(a.entries[i].item_id)) {
                xs.push_back(a.entries[i].score);
                ys.push_back(b.entries[j].score);
            }
            ++i;
            ++j;
        } else if (cmp < 0) {
            if (keep == nullptr || keep->contains(a.entries[i].item_id)) ++dropped;
            ++i;
        } else {
            if (keep == nullptr || keep->contains(b.entries[j].item_id)) ++dropped;
            ++j;
        }
    }
    for (; i < a.entries.size(); ++i) {
        if (keep == nullptr || keep->contains(a.entries[i].item_id)) ++dropped;
    }
    for (; j < b.entries.size(); ++j) {
        if (keep == nullptr || keep->contains(b.entries[j].item_id)) ++dropped;
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fewer than 2 items scored in both halves");
    }
    TrialCorrelation out;
    out.rho = spearman(xs, ys);
    out.r = pearson(xs, ys);
    out.used = static_cast<std::int64_t>(xs.size());
    out.dropped = dropped;
    return out;
}

// Seed for trial t; appending trials never reseeds earlier ones.
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
    return seed ^ splitmix64(static_cast<std::uint64_t>(trial));
}

template <typename TrialFn>
ShrReport shr_impl(ScoreMethod method, UnitKind unit_kind, const ShrOptions& options,
                   std::int64_t budget, TrialFn&& run_trial) {
    if (options.trials < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    ShrReport report;
    report.method = method;
    report.unit_kind = unit_kind;
    report.trials = options.trials;
    report.seed = options.seed;
    report.annotations_per_unit = options.annotations_per_unit;
    report.budget = budget;
    report.per_trial.reserve(static_cast<std::size_t>(options.trials));

    double sum_rho = 0.0;
    double sum_r = 0.0;
    for (std::int64_t t = 1; t <= options.trials; ++t) {
        const TrialCorrelation corr = run_trial(trial_seed(options.seed, t));
        report.per_trial.push_back({t, corr.rho, corr.r, corr.used, corr.dropped});
        sum_rho += corr.rho;
        sum_r += corr.r;
    }
    const double n = static_cast<double>(options.trials);
    report.mean_rho = sum_rho / n;
    report.mean_r = sum_r / n;
    double sq_rho = 0.0;
    double sq_r = 0.0;
    for (const ShrTrial& trial : report.per_trial) {
        sq_rho += (trial.rho - report.mean_rho) * (trial.rho - report.mean_rho);
        sq_r += (trial.r - report.mean_r) * (trial.r - report.mean_r);
    }
    report.sd_rho = std::sqrt(sq_rho / n);
    report.sd_r = std::sqrt(sq_r / n);
    return report;
}

template <typename Response, typename UnitFn>
std::int64_t half_budget(std::span<const Response> responses,
                         std::optional<std::int64_t> k, UnitFn&& unit_of) {
    if (!k) return static_cast<std::int64_t>(responses.size()) / 2;
    std::unordered_set<std::string> units;
    for (const Response& response : responses) units.insert(unit_of(response));
    return *k * static_cast<std::int64_t>(units.size());
}

}  // namespace

BwsSplit split_half(std::span<const BwsResponse> responses, std::uint64_t seed,
                    std::optional<std::int64_t> annotations_per_unit) {
    auto halves = split_impl(responses, seed, annotations_per_unit,
                             [](const BwsResponse& r) { return r.tuple_id; });
    return {std::move(halves.first), std::move(halves.second)};
}

RsSplit split_half(std::span<const RsResponse> responses, std::uint64_t seed,
                   std::optional<std::int64_t> annotations_per_unit) {
    auto halves = split_impl(responses, seed, annotations_per_unit,
                             [](const RsResponse& r) { return r.item_id; });
    return {std::move(halves.first), std::move(halves.second)};
}

ShrReport shr_bws(const TupleSet& tuples, std::span<const BwsResponse> responses,
                  const ShrOptions& options) {
    const std::int64_t budget = half_budget(responses, options.annotations_per_unit,
                                            [](const BwsResponse& r) { return r.tuple_id; });
    return shr_impl(ScoreMethod::bws, UnitKind::per_tuple, options, budget,
                    [&](std::uint64_t seed) {
                        const BwsSplit split =
                            split_half(responses, seed, options.annotations_per_unit);
                        const ScoreTable a = score_bws(tuples, split.half_a);
                        const ScoreTable b = score_bws(tuples, split.half_b);
                        return correlate_tables(a, b, nullptr);
                    });
}

ShrReport shr_rs(std::span<const RsResponse> responses, const ScaleConfig& scale,
                 const ShrOptions& options) {
    const std::int64_t budget = half_budget(responses, options.annotations_per_unit,
                                            [](const RsResponse& r) { return r.item_id; });
    return shr_impl(ScoreMethod::rs, UnitKind::per_item, options, budget,
                    [&](std::uint64_t seed) {
                        const RsSplit split =
                            split_half(responses, seed, options.annotations_per_unit);
                        const ScoreTable a = score_rs(split.half_a, scale);
                        const ScoreTable b = score_rs(split.half_b, scale);
                        return correlate_tables(a, b, nullptr);
                    });
}

ComparisonReport compare_methods(const ScoreTable& a, const ScoreTable& b) {
    if (!a.normalized || !b.normalized) {
        throw std::invalid_argument("comparison requires normalized score tables");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        const int cmp = a.entries[i].item_id.compare(b.entries[j].item_id);
        if (cmp == 0) {
            xs.push_back(a.entries[i].score);
            ys.push_back(b.entries[j].score);
            ++i;
            ++j;
        } else if (cmp < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fewer than 2 items shared between score tables");
    }

    ComparisonReport report;
    report.item_count = static_cast<std::int64_t>(xs.size());
    double score_diff = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p) score_diff += std::fabs(xs[p] - ys[p]);
    report.mean_abs_score_diff = score_diff / static_cast<double>(xs.size());

    const std::vector<double> ranks_a = fractional_ranks(xs, /*descending=*/true);
    const std::vector<double> ranks_b = fractional_ranks(ys, /*descending=*/true);
    double rank_diff = 0.0;
    for (std::size_t p = 0; p < ranks_a.size(); ++p) {
        rank_diff += std::fabs(ranks_a[p] - ranks_b[p]);
    }
    report.mean_abs_rank_diff = rank_diff / static_cast<double>(ranks_a.size());

    report.rho = spearman(xs, ys);
    report.r = pearson(xs, ys);
    return report;
}

namespace {

struct CategoryBucket {
    std::string category;
    std::unordered_set<std::string> ids;
    bool all_terms = false;
};

// "all terms" first, real categories alphabetically, "(uncategorized)" last.
std::vector<CategoryBucket> category_buckets(const ItemSet& items) {
    std::map<std::string, std::unordered_set<std::string>> by_category;
    std::unordered_set<std::string> uncategorized;
    std::unordered_set<std::string> all;
    for (const Item& item : items.items()) {
        all.insert(item.id);
        if (item.category.empty()) {
            uncategorized.insert(item.id);
        } else {
            by_category[item.category].insert(item.id);
        }
    }
    std::vector<CategoryBucket> buckets;
    buckets.push_back({"all terms", std::move(all), true});
    for (auto& [category, ids] : by_category) {
        buckets.push_back({category, std::move(ids), false});
    }
    if (!uncategorized.empty()) {
        buckets.push_back({"(uncategorized)", std::move(uncategorized), false});
    }
    return buckets;
}

ScoreTable filter_table(const ScoreTable& table, const std::unordered_set<std::string>& ids) {
    ScoreTable out;
    out.method = table.method;
    out.normalized = table.normalized;
    for (const ScoreEntry& entry : table.entries) {
        if (ids.contains(entry.item_id)) out.entries.push_back(entry);
    }
    return out;
}

template <typename TrialTablesFn>
std::vector<SubsetShrRow> subset_shr_impl(const ItemSet& items, const ShrOptions& options,
                                          TrialTablesFn&& tables_for_trial) {
    if (options.trials < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    const std::vector<CategoryBucket> buckets = category_buckets(items);
    std::vector<SubsetShrRow> rows(buckets.size());
    std::vector<double> sum_rho(buckets.size(), 0.0);
    std::vector<double> sum_r(buckets.size(), 0.0);
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        rows[i].category = buckets[i].category;
        rows[i].item_count = static_cast<std::int64_t>(buckets[i].ids.size());
        if (rows[i].item_count < 2) {
            rows[i].skipped = true;
            rows[i].skip_reason = "fewer than 2 items in category";
        }
    }
    for (std::int64_t t = 1; t <= options.trials; ++t) {
        const auto [a, b] = tables_for_trial(trial_seed(options.seed, t));
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            if (rows[i].skipped) continue;
            try {
                const TrialCorrelation corr =
                    correlate_tables(a, b, buckets[i].all_terms ? nullptr : &buckets[i].ids);
                sum_rho[i] += corr.rho;
                sum_r[i] += corr.r;
            } catch (const std::exception& e) {
                rows[i].skipped = true;
                rows[i].skip_reason = e.what();
            }
        }
    }
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        if (rows[i].skipped) continue;
        rows[i].mean_rho = sum_rho[i] / static_cast<double>(options.trials);
        rows[i].mean_r = sum_r[i] / static_cast<double>(options.trials);
    }
    return rows;
}

}  // namespace

std::vector<SubsetCompareRow> subset_compare(const ItemSet& items, const ScoreTable& a,
                                             const ScoreTable& b) {
    std::vector<SubsetCompareRow> rows;
    for (const CategoryBucket& bucket : category_buckets(items)) {
        SubsetCompareRow row;
        row.category = bucket.category;
        row.item_count = static_cast<std::int64_t>(bucket.ids.size());
        if (row.item_count < 2) {
            row.skipped = true;
            row.skip_reason = "fewer than 2 items in category";
            rows.push_back(std::move(row));
            continue;
        }
        try {
            if (bucket.all_terms) {
                row.report = compare_methods(a, b);
            } else {
                row.report = compare_methods(filter_table(a, bucket.ids),
                                             filter_table(b, bucket.ids));
            }
        } catch (const std::exception& e) {
            row.skipped = true;
            row.skip_reason = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SubsetShrRow> subset_shr_bws(const ItemSet& items, const TupleSet& tuples,
                                         std::span<const BwsResponse> responses,
                                         const ShrOptions& options) {
    return subset_shr_impl(items, options, [&](std::uint64_t seed) {
        const BwsSplit split = split_half(responses, seed, options.annotations_per_unit);
        return std::pair<ScoreTable, ScoreTable>{score_bws(tuples, split.half_a),
                                                 score_bws(tuples, split.half_b)};
    });
}

std::vector<SubsetShrRow> subset_shr_rs(const ItemSet& items,
                                        std::span<const RsResponse> responses,
                                        const ScaleConfig& scale, const ShrOptions& options) {
    return subset_shr_impl(items, options, [&](std::uint64_t seed) {
        const RsSplit split = split_half(responses, seed, options.annotations_per_unit);
        return std::pair<ScoreTable, ScoreTable>{score_rs(split.half_a, scale),
                                                 score_rs(split.half_b, scale)};
    });
}

ConsistencyReport repeat_consistency(std::span<const RsResponse> responses,
                                     std::span<const std::string> repeated_ids) {
    constexpr std::int64_t kBinSeconds = 12 * 60 * 60;
    const std::unordered_set<std::string> repeated(repeated_ids.begin(), repeated_ids.end());

    struct Observation {
        std::int64_t timestamp;
        std::size_t order;
        int rating;
    };
    std::map<std::pair<std::string, std::string>, std::vector<Observation>> groups;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const RsResponse& r = responses[i];
        if (!r.timestamp || !repeated.contains(r.item_id)) continue;
        groups[{r.annotator_id, r.item_id}].push_back({*r.timestamp, i, r.rating});
    }

    ConsistencyReport report;
    std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> bins;  // bin -> (pairs, inconsistent)
    double diff_sum = 0.0;
    for (auto& [key, observations] : groups) {
        if (observations.size() < 2) continue;
        std::sort(observations.begin(), observations.end(),
                  [](const Observation& a, const Observation& b) {
                      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                      return a.order < b.order;
                  });
        const Observation& first = observations[0];
        const Observation& second = observations[1];
        ++report.pair_count;
        const bool inconsistent = first.rating != second.rating;
        if (inconsistent) {
            ++report.inconsistent_count;
            diff_sum += std::abs(first.rating - second.rating);
        }
        const std::int64_t bin = (second.timestamp - first.timestamp) / kBinSeconds;
        ++bins[bin].first;
        if (inconsistent) ++bins[bin].second;
    }
    if (report.pair_count == 0) {
        throw std::invalid_argument("no eligible repeat pairs");
    }
    report.inconsistency_rate =
        static_cast<double>(report.inconsistent_count) / static_cast<double>(report.pair_count);
    report.mean_abs_diff = report.inconsistent_count > 0
                               ? diff_sum / static_cast<double>(report.inconsistent_count)
                               : 0.0;
    for (const auto& [bin, counts] : bins) {
        ConsistencyBin row;
        row.bin = bin;
        row.pair_count = counts.first;
        row.rate = static_cast<double>(counts.second) / static_cast<double>(counts.first);
        row.low_support = counts.first < 3;
        report.bins.push_back(row);
    }
    return report;
}

ShrDifference shr_difference_test(const ShrReport& a, const ShrReport& b,
                                  std::int64_t resamples, std::uint64_t seed) {
    if (a.trials != b.trials || a.per_trial.size() != b.per_trial.size()) {
        throw std::invalid_argument("trial count mismatch between reports");
    }
    if (resamples < 1) {
        throw std::invalid_argument("resample count must be at least 1");
    }
    std::vector<double> diffs(a.per_trial.size());
    double observed_sum = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        diffs[i] = a.per_trial[i].rho - b.per_trial[i].rho;
        observed_sum += diffs[i];
    }
    const double observed = std::fabs(observed_sum);

    Rng rng(seed);
    std::int64_t at_least = 0;
    for (std::int64_t rep = 0; rep < resamples; ++rep) {
        double sum = 0.0;
        for (double d : diffs) {
            sum += rng.coin() ? d : -d;
        }
        if (std::fabs(sum) >= observed) ++at_least;
    }

    ShrDifference out;
    out.mean_difference = observed_sum / static_cast<double>(diffs.size());
    out.p_value = static_cast<double>(at_least + 1) / static_cast<double>(resamples + 1);
    out.resamples = resamples;
    out.seed = seed;
    return out;
}

}  // namespace bwskit
