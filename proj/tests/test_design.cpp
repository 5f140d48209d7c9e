#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bwskit/design.hpp"
#include "doctest.h"

using bwskit::DesignSpec;
using bwskit::generate_tuples;
using bwskit::Item;
using bwskit::ItemSet;
using bwskit::Tuple4;
using bwskit::TupleSet;
using bwskit::verify_tuple_set;

namespace {

ItemSet numbered_items(int count) {
    std::vector<Item> items;
    for (int i = 1; i <= count; ++i) {
        const std::string id = "i" + std::to_string(100 + i);
        items.push_back({id, id, ""});
    }
    return ItemSet(std::move(items));
}

}  // namespace

TEST_CASE("generated designs are balanced with no within-tuple duplicates") {
    const ItemSet items = numbered_items(30);
    const TupleSet tuples = generate_tuples(items, {4, 60, 99});
    REQUIRE(tuples.count() == 60);
    CHECK(tuples.tuple_size == 4);

    const auto report = verify_tuple_set(tuples, items);
    CHECK(report.within_tuple_duplicates == 0);
    CHECK(report.unknown_item_ids.empty());
    CHECK(report.appearance_sum == 240);
    // 4*60/30 = 8 exactly, so balance collapses to equality.
    CHECK(report.min_appearances == 8);
    CHECK(report.max_appearances == 8);
    CHECK(report.balanced());
}

TEST_CASE("non-divisible slot totals stay within one appearance of each other") {
    const ItemSet items = numbered_items(17);
    const TupleSet tuples = generate_tuples(items, {4, 30, 5});
    const auto report = verify_tuple_set(tuples, items);
    CHECK(report.within_tuple_duplicates == 0);
    CHECK(report.balanced());
    CHECK(report.appearance_sum == 120);
    CHECK(report.max_appearances - report.min_appearances <= 1);
}

TEST_CASE("generation is a pure function of items and seed") {
    const ItemSet items = numbered_items(20);
    const TupleSet a = generate_tuples(items, {4, 40, 7});
    const TupleSet b = generate_tuples(items, {4, 40, 7});
    REQUIRE(a.count() == b.count());
    for (std::size_t i = 0; i < a.count(); ++i) {
        CHECK(a.tuples[i].tuple_id == b.tuples[i].tuple_id);
        CHECK(a.tuples[i].members == b.tuples[i].members);
    }

    const TupleSet c = generate_tuples(items, {4, 40, 8});
    bool any_difference = false;
    for (std::size_t i = 0; i < a.count(); ++i) {
        if (a.tuples[i].members != c.tuples[i].members) any_difference = true;
    }
    CHECK(any_difference);
}

TEST_CASE("tuple ids are zero-padded ordinals") {
    const ItemSet items = numbered_items(12);
    const TupleSet tuples = generate_tuples(items, {4, 12, 1});
    CHECK(tuples.tuples.front().tuple_id == "t01");
    CHECK(tuples.tuples.back().tuple_id == "t12");
    REQUIRE(tuples.find("t05") != nullptr);
}

TEST_CASE("degenerate specs are rejected") {
    const ItemSet items = numbered_items(3);
    CHECK_THROWS_AS(generate_tuples(items, {4, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_tuples(items, {1, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_tuples(items, {2, 0, 0}), std::invalid_argument);
    CHECK_NOTHROW(generate_tuples(items, {3, 2, 0}));
}

TEST_CASE("item sets as small as the tuple size still work") {
    // Every tuple must use all 4 items, so identical sets are unavoidable.
    const ItemSet items = numbered_items(4);
    const TupleSet tuples = generate_tuples(items, {4, 3, 31});
    const auto report = verify_tuple_set(tuples, items);
    CHECK(report.within_tuple_duplicates == 0);
    CHECK(report.duplicate_tuples == 2);
    CHECK(report.min_appearances == 3);
    CHECK(report.max_appearances == 3);
}

TEST_CASE("duplicate repair converges on small item sets with many tuples") {
    // Five items leave a single spare value per tuple, the hardest case for
    // the swap repair.
    const ItemSet items = numbered_items(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TupleSet tuples = generate_tuples(items, {4, 40, seed});
        const auto report = verify_tuple_set(tuples, items);
        CHECK(report.within_tuple_duplicates == 0);
        CHECK(report.balanced());
    }
}

TEST_CASE("verification reports defects in handcrafted tuple sets") {
    const ItemSet items = numbered_items(6);  // i101..i106
    TupleSet tuples;
    tuples.tuple_size = 4;
    tuples.tuples.push_back(Tuple4{"t1", {"i101", "i102", "i103", "i104"}});
    tuples.tuples.push_back(Tuple4{"t2", {"i101", "i101", "i102", "i999"}});
    tuples.tuples.push_back(Tuple4{"t3", {"i104", "i103", "i102", "i101"}});
    tuples.build_index();

    const auto report = verify_tuple_set(tuples, items);
    CHECK(report.tuple_count == 3);
    CHECK(report.within_tuple_duplicates == 1);
    CHECK(report.duplicate_tuples == 1);  // t3 repeats t1 as a set
    CHECK(report.unknown_item_ids == std::vector<std::string>{"i999"});
    CHECK(report.appearances.at("i101") == 4);
    CHECK(report.appearances.at("i105") == 0);
    CHECK(report.appearances.at("i106") == 0);
    CHECK(report.min_appearances == 0);
    CHECK_FALSE(report.balanced());
}

TEST_CASE("pair co-occurrence histogram accounts for unseen pairs") {
    const ItemSet items = numbered_items(5);
    TupleSet tuples;
    tuples.tuple_size = 4;
    tuples.tuples.push_back(Tuple4{"t1", {"i101", "i102", "i103", "i104"}});
    tuples.build_index();

    const auto report = verify_tuple_set(tuples, items);
    // C(4,2) = 6 pairs seen once; C(5,2) - 6 = 4 never seen.
    CHECK(report.pair_cooccurrence.at(1) == 6);
    CHECK(report.pair_cooccurrence.at(0) == 4);
}
