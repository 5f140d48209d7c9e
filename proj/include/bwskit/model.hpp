#pragma once

// Shared domain types for best-worst scaling and rating-scale annotation.
// All types are immutable values after construction; readers in io.hpp
// enforce the structural invariants at parse time, and the validate/verify
// operations re-check them on in-memory data.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bwskit {

struct Item {
    std::string id;        // non-empty, unique within an ItemSet
    std::string text;      // display text; may equal id
    std::string category;  // optional flat label, empty when absent
};

class ItemSet {
public:
    // Throws std::invalid_argument on empty set, empty id or duplicate id.
    explicit ItemSet(std::vector<Item> items);

    const std::vector<Item>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool contains(const std::string& id) const { return index_.count(id) > 0; }
    const Item* find(const std::string& id) const;

private:
    std::vector<Item> items_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Tuple4 {
    std::string tuple_id;
    std::vector<std::string> members;  // exactly tuple_size ids, distinct
};

struct TupleSet {
    std::vector<Tuple4> tuples;
    int tuple_size = 4;

    std::size_t count() const { return tuples.size(); }
    const Tuple4* find(const std::string& tuple_id) const;
    void build_index();  // called by readers/generators after filling tuples

private:
    std::unordered_map<std::string, std::size_t> index_;
};

struct BwsResponse {
    std::string tuple_id;
    std::string annotator_id;
    std::string best_id;
    std::string worst_id;
    std::optional<std::int64_t> timestamp;  // Unix epoch seconds
};

struct RsResponse {
    std::string item_id;
    std::string annotator_id;
    int rating = 0;
    std::optional<std::int64_t> timestamp;
};

struct ScaleConfig {
    int min = -4;
    int max = 4;

    int range() const { return max - min; }
    bool contains(int rating) const { return rating >= min && rating <= max; }
};

// Throws std::invalid_argument unless min < max.
ScaleConfig make_scale(int min, int max);

struct Violation {
    std::size_t row = 0;  // 1-based position in the response collection
    std::string message;
};

// Checks every response against the tuple set: unknown tuple ids,
// best == worst, and membership of best/worst in the tuple. Non-fatal by
// design; a fully consistent collection yields an empty report.
std::vector<Violation> validate_bws_responses(std::span<const BwsResponse> responses,
                                              const TupleSet& tuples);

// Matched-budget arithmetic: annotation totals are equal when
// ratings_per_item * item_count == responses_per_tuple * tuple_count.
struct MatchedBudget {
    bool integral = false;
    std::int64_t ratings_per_item = 0;  // meaningful only when integral
    double exact = 0.0;                 // responses_per_tuple * m / N as a real
};

// Throws std::invalid_argument when any argument is < 1.
MatchedBudget matched_budgets(std::int64_t item_count, std::int64_t tuple_count,
                              std::int64_t responses_per_tuple);

}  // namespace bwskit
