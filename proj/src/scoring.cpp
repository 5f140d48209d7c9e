#include "bwskit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bwskit/stats.hpp"

namespace bwskit {

std::string to_string(ScoreMethod method) {
    return method == ScoreMethod::bws ? "bws" : "rs";
}

ScoreMethod score_method_from_string(const std::string& name) {
    if (name == "bws") return ScoreMethod::bws;
    if (name == "rs") return ScoreMethod::rs;
    throw std::invalid_argument("unknown score method: " + name);
}

const ScoreEntry* ScoreTable::find(const std::string& item_id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), item_id,
                               [](const ScoreEntry& e, const std::string& id) {
                                   return e.item_id < id;
                               });
    if (it == entries.end() || it->item_id != item_id) return nullptr;
    return &*it;
}

ScoreTable score_bws(const TupleSet& tuples, std::span<const BwsResponse> responses) {
    const std::vector<Violation> violations = validate_bws_responses(responses, tuples);
    if (!violations.empty()) {
        throw std::invalid_argument("row " + std::to_string(violations.front().row) + ": " +
                                    violations.front().message);
    }

    struct Counts {
        std::int64_t best = 0;
        std::int64_t worst = 0;
        std::int64_t appearances = 0;
    };
    std::unordered_map<std::string, Counts> counts;
    for (const BwsResponse& response : responses) {
        const Tuple4* tuple = tuples.find(response.tuple_id);
        for (const std::string& member : tuple->members) {
            ++counts[member].appearances;
        }
        ++counts[response.best_id].best;
        ++counts[response.worst_id].worst;
    }

    ScoreTable table;
    table.method = ScoreMethod::bws;
    table.entries.reserve(counts.size());
    for (const auto& [item_id, c] : counts) {
        ScoreEntry entry;
        entry.item_id = item_id;
        entry.n_best = c.best;
        entry.n_worst = c.worst;
        entry.n_appearances = c.appearances;
        entry.score = static_cast<double>(c.best - c.worst) / static_cast<double>(c.appearances);
        table.entries.push_back(std::move(entry));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.item_id < b.item_id; });
    return table;
}

ScoreTable score_rs(std::span<const RsResponse> responses, const ScaleConfig& scale) {
    for (std::size_t i = 0; i < responses.size(); ++i) {
        if (!scale.contains(responses[i].rating)) {
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": rating " +
                                        std::to_string(responses[i].rating) +
                                        " outside scale " + std::to_string(scale.min) + ".." +
                                        std::to_string(scale.max));
        }
    }

    std::unordered_map<std::string, std::vector<int>> ratings;
    for (const RsResponse& response : responses) {
        ratings[response.item_id].push_back(response.rating);
    }

    ScoreTable table;
    table.method = ScoreMethod::rs;
    table.entries.reserve(ratings.size());
    for (const auto& [item_id, values] : ratings) {
        double sum = 0.0;
        for (int v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        double sq = 0.0;
        for (int v : values) sq += (v - mean) * (v - mean);
        ScoreEntry entry;
        entry.item_id = item_id;
        entry.score = mean;
        entry.sd = std::sqrt(sq / static_cast<double>(values.size()));
        entry.n_ratings = static_cast<std::int64_t>(values.size());
        table.entries.push_back(std::move(entry));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.item_id < b.item_id; });
    return table;
}

ScoreTable normalize_scores(const ScoreTable& table, const ScaleConfig& scale) {
    if (table.normalized) {
        throw std::invalid_argument("scores already normalized");
    }
    double lo = -1.0;
    double hi = 1.0;
    if (table.method == ScoreMethod::rs) {
        lo = scale.min;
        hi = scale.max;
    }
    const double width = hi - lo;
    ScoreTable out = table;
    out.normalized = true;
    for (ScoreEntry& entry : out.entries) {
        entry.score = (entry.score - lo) / width;
        entry.sd = entry.sd / width;
    }
    return out;
}

std::vector<RankedItem> rank_items(const ScoreTable& table) {
    if (table.entries.empty()) {
        throw std::invalid_argument("cannot rank an empty score table");
    }
    std::vector<double> scores;
    scores.reserve(table.entries.size());
    for (const ScoreEntry& entry : table.entries) scores.push_back(entry.score);
    const std::vector<double> ranks = fractional_ranks(scores, /*descending=*/true);

    std::vector<RankedItem> out;
    out.reserve(table.entries.size());
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        out.push_back({table.entries[i].item_id, table.entries[i].score, ranks[i]});
    }
    std::sort(out.begin(), out.end(), [](const RankedItem& a, const RankedItem& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.item_id < b.item_id;
    });
    return out;
}

namespace {

template <typename Response, typename SeenFn>
std::vector<AnnotatorGoldStats> gold_stats(std::span<const Response> responses,
                                           double threshold, SeenFn&& seen_fn) {
    std::map<std::string, AnnotatorGoldStats> by_annotator;
    for (const Response& response : responses) {
        AnnotatorGoldStats& stats = by_annotator[response.annotator_id];
        stats.annotator_id = response.annotator_id;
        seen_fn(response, stats);
    }
    std::vector<AnnotatorGoldStats> out;
    out.reserve(by_annotator.size());
    for (auto& [id, stats] : by_annotator) {
        if (stats.gold_seen > 0) {
            stats.accuracy =
                static_cast<double>(stats.gold_correct) / static_cast<double>(stats.gold_seen);
            stats.rejected = stats.accuracy < threshold;
        }
        out.push_back(stats);
    }
    return out;
}

template <typename Response>
std::vector<Response> retained_responses(std::span<const Response> responses,
                                         const std::vector<AnnotatorGoldStats>& stats) {
    std::unordered_set<std::string> rejected;
    for (const AnnotatorGoldStats& s : stats) {
        if (s.rejected) rejected.insert(s.annotator_id);
    }
    std::vector<Response> retained;
    retained.reserve(responses.size());
    for (const Response& response : responses) {
        if (!rejected.contains(response.annotator_id)) retained.push_back(response);
    }
    return retained;
}

}  // namespace

BwsGoldFilterResult filter_gold_bws(std::span<const BwsResponse> responses,
                                    std::span<const BwsGold> gold, double threshold) {
    if (gold.empty()) {
        throw std::invalid_argument("no gold questions defined");
    }
    std::unordered_map<std::string, const BwsGold*> by_tuple;
    for (const BwsGold& g : gold) by_tuple[g.tuple_id] = &g;

    BwsGoldFilterResult result;
    result.annotators = gold_stats<BwsResponse>(
        responses, threshold, [&](const BwsResponse& r, AnnotatorGoldStats& s) {
            auto it = by_tuple.find(r.tuple_id);
            if (it == by_tuple.end()) return;
            s.gold_seen += 2;
            if (r.best_id == it->second->gold_best) ++s.gold_correct;
            if (r.worst_id == it->second->gold_worst) ++s.gold_correct;
        });
    result.retained = retained_responses(responses, result.annotators);
    return result;
}

RsGoldFilterResult filter_gold_rs(std::span<const RsResponse> responses,
                                  std::span<const RsGoldInterval> gold, double threshold) {
    if (gold.empty()) {
        throw std::invalid_argument("no gold questions defined");
    }
    std::unordered_map<std::string, const RsGoldInterval*> by_item;
    for (const RsGoldInterval& g : gold) by_item[g.item_id] = &g;

    RsGoldFilterResult result;
    result.annotators = gold_stats<RsResponse>(
        responses, threshold, [&](const RsResponse& r, AnnotatorGoldStats& s) {
            auto it = by_item.find(r.item_id);
            if (it == by_item.end()) return;
            s.gold_seen += 1;
            if (r.rating >= it->second->min_rating && r.rating <= it->second->max_rating) {
                ++s.gold_correct;
            }
        });
    result.retained = retained_responses(responses, result.annotators);
    return result;
}

void validate_bws_gold(std::span<const BwsGold> gold, const TupleSet& tuples) {
    for (const BwsGold& g : gold) {
        const Tuple4* tuple = tuples.find(g.tuple_id);
        if (tuple == nullptr) {
            throw std::invalid_argument("gold references unknown tuple: " + g.tuple_id);
        }
        const auto member = [&](const std::string& id) {
            return std::find(tuple->members.begin(), tuple->members.end(), id) !=
                   tuple->members.end();
        };
        if (!member(g.gold_best) || !member(g.gold_worst)) {
            throw std::invalid_argument("gold ids not members of tuple " + g.tuple_id);
        }
        if (g.gold_best == g.gold_worst) {
            throw std::invalid_argument("gold best equals gold worst in tuple " + g.tuple_id);
        }
    }
}

void validate_rs_gold(std::span<const RsGoldInterval> gold, const ScaleConfig& scale) {
    for (const RsGoldInterval& g : gold) {
        if (g.min_rating > g.max_rating || !scale.contains(g.min_rating) ||
            !scale.contains(g.max_rating)) {
            throw std::invalid_argument("gold interval outside scale for item " + g.item_id);
        }
    }
}

}  // namespace bwskit
