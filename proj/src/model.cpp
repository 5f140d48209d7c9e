#include "bwskit/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace bwskit {

ItemSet::ItemSet(std::vector<Item> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw std::invalid_argument("item set must contain at least one item");
    }
    index_.reserve(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].id.empty()) {
            throw std::invalid_argument("item id must be non-empty");
        }
        if (!index_.emplace(items_[i].id, i).second) {
            throw std::invalid_argument("duplicate item id '" + items_[i].id + "'");
        }
    }
}

const Item* ItemSet::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &items_[it->second];
}

const Tuple4* TupleSet::find(const std::string& tuple_id) const {
    auto it = index_.find(tuple_id);
    return it == index_.end() ? nullptr : &tuples[it->second];
}

void TupleSet::build_index() {
    index_.clear();
    index_.reserve(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (!index_.emplace(tuples[i].tuple_id, i).second) {
            throw std::invalid_argument("duplicate tuple id '" + tuples[i].tuple_id + "'");
        }
    }
}

ScaleConfig make_scale(int min, int max) {
    if (min >= max) {
        throw std::invalid_argument("scale min must be less than scale max");
    }
    return ScaleConfig{min, max};
}

std::vector<Violation> validate_bws_responses(std::span<const BwsResponse> responses,
                                              const TupleSet& tuples) {
    std::vector<Violation> report;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const BwsResponse& r = responses[i];
        const std::size_t row = i + 1;
        const Tuple4* tuple = tuples.find(r.tuple_id);
        if (tuple == nullptr) {
            report.push_back({row, "unknown tuple_id '" + r.tuple_id + "'"});
            continue;
        }
        if (r.best_id == r.worst_id) {
            report.push_back({row, "best equals worst ('" + r.best_id + "')"});
        }
        const auto is_member = [&](const std::string& id) {
            return std::find(tuple->members.begin(), tuple->members.end(), id) !=
                   tuple->members.end();
        };
        if (!is_member(r.best_id)) {
            report.push_back({row, "best_id '" + r.best_id + "' not a member of tuple '" +
                                       r.tuple_id + "'"});
        }
        if (!is_member(r.worst_id)) {
            report.push_back({row, "worst_id '" + r.worst_id + "' not a member of tuple '" +
                                       r.tuple_id + "'"});
        }
    }
    return report;
}

MatchedBudget matched_budgets(std::int64_t item_count, std::int64_t tuple_count,
                              std::int64_t responses_per_tuple) {
    if (item_count < 1 || tuple_count < 1 || responses_per_tuple < 1) {
        throw std::invalid_argument("matched_budgets requires all counts >= 1");
    }
    const std::int64_t total = tuple_count * responses_per_tuple;
    MatchedBudget out;
    out.exact = static_cast<double>(total) / static_cast<double>(item_count);
    if (total % item_count == 0) {
        out.integral = true;
        out.ratings_per_item = total / item_count;
    }
    return out;
}

}  // namespace bwskit
