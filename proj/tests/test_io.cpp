#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"

#include "bwskit/csv.hpp"
#include "bwskit/io.hpp"

using namespace bwskit;

namespace {

struct TempDir {
    std::filesystem::path dir;

    TempDir() {
        static int counter = 0;
        dir = std::filesystem::temp_directory_path() /
              ("bwskit-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(dir);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << text;
}

Metadata run_meta() {
    Metadata m;
    m.add("version", "0.1.0");
    m.add("subcommand", "test");
    return m;
}

}  // namespace

TEST_CASE("item files round-trip with quoting and leading metadata") {
    TempDir tmp;
    const std::string path = tmp.path("items.csv");
    const ItemSet items(std::vector<Item>{
        {"i1", "plain", "colors"},
        {"i2", "comma, quote \" and\nnewline", ""},
        {"i3", "last", "sizes"},
    });
    write_items(path, items, run_meta());

    const std::string text = slurp(path);
    CHECK(text.rfind("# version: 0.1.0\n# subcommand: test\nid,text,category\n", 0) == 0);

    const ItemSet back = read_items(path);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.items()[i].id == items.items()[i].id);
        CHECK(back.items()[i].text == items.items()[i].text);
        CHECK(back.items()[i].category == items.items()[i].category);
    }
}

TEST_CASE("item reader accepts the two-column form and rejects bad files") {
    TempDir tmp;
    const std::string two = tmp.path("two.csv");
    spit(two, "id,text\na,alpha\nb,beta\n");
    const ItemSet back = read_items(two);
    REQUIRE(back.size() == 2);
    CHECK(back.items()[0].category.empty());

    const std::string dup = tmp.path("dup.csv");
    spit(dup, "id,text\na,alpha\na,again\n");
    CHECK_THROWS_WITH_AS(read_items(dup), (dup + ":3: duplicate item id: a").c_str(),
                         ParseError);

    const std::string empty = tmp.path("empty.csv");
    spit(empty, "id,text\n");
    CHECK_THROWS_WITH_AS(read_items(empty), (empty + ":1: item file has no rows").c_str(),
                         ParseError);

    const std::string blank_id = tmp.path("blank.csv");
    spit(blank_id, "id,text\n,alpha\n");
    CHECK_THROWS_WITH_AS(read_items(blank_id),
                         (blank_id + ":2: item id must not be empty").c_str(), ParseError);

    const std::string header = tmp.path("header.csv");
    spit(header, "item,words\na,alpha\n");
    CHECK_THROWS_AS(read_items(header), ParseError);
}

TEST_CASE("tuple files round-trip and infer the arity from the header") {
    TempDir tmp;
    const std::string path = tmp.path("tuples.csv");
    TupleSet tuples;
    tuples.tuple_size = 3;
    tuples.tuples = {{"t1", {"a", "b", "c"}}, {"t2", {"b", "c", "d"}}};
    tuples.build_index();
    write_tuples(path, tuples, run_meta());

    const std::string text = slurp(path);
    CHECK(text.find("tuple_id,item1,item2,item3\n") != std::string::npos);

    const TupleSet back = read_tuples(path);
    CHECK(back.tuple_size == 3);
    REQUIRE(back.count() == 2);
    CHECK(back.tuples[0].tuple_id == "t1");
    CHECK(back.tuples[1].members == std::vector<std::string>{"b", "c", "d"});
    CHECK(back.find("t2") != nullptr);
}

TEST_CASE("tuple reader keeps malformed designs loadable but tuple ids unique") {
    TempDir tmp;
    // Repeated members parse fine; verification is a separate operation.
    const std::string repeated = tmp.path("repeated.csv");
    spit(repeated, "tuple_id,item1,item2,item3,item4\nt1,a,a,b,c\n");
    const TupleSet back = read_tuples(repeated);
    REQUIRE(back.count() == 1);
    CHECK(back.tuples[0].members[0] == back.tuples[0].members[1]);

    const std::string dup = tmp.path("dup.csv");
    spit(dup, "tuple_id,item1,item2\nt1,a,b\nt1,c,d\n");
    CHECK_THROWS_WITH_AS(read_tuples(dup), (dup + ":3: duplicate tuple id: t1").c_str(),
                         ParseError);

    const std::string cols = tmp.path("cols.csv");
    spit(cols, "tuple_id,item1,thing\nt1,a,b\n");
    CHECK_THROWS_WITH_AS(read_tuples(cols),
                         (cols + ":1: expected column 'item2', got 'thing'").c_str(),
                         ParseError);

    const std::string narrow = tmp.path("narrow.csv");
    spit(narrow, "tuple_id,item1\nt1,a\n");
    CHECK_THROWS_AS(read_tuples(narrow), ParseError);
}

TEST_CASE("response files round-trip optional timestamps") {
    TempDir tmp;
    const std::string bws = tmp.path("bws.csv");
    const std::vector<BwsResponse> bws_in = {
        {"t1", "ann1", "a", "d", 1700000000},
        {"t2", "ann2", "b", "c", std::nullopt},
    };
    write_bws_responses(bws, bws_in, run_meta());
    const std::vector<BwsResponse> bws_out = read_bws_responses(bws);
    REQUIRE(bws_out.size() == 2);
    CHECK(bws_out[0].tuple_id == "t1");
    CHECK(bws_out[0].best_id == "a");
    CHECK(bws_out[0].worst_id == "d");
    CHECK(bws_out[0].timestamp == std::optional<std::int64_t>(1700000000));
    CHECK(bws_out[1].annotator_id == "ann2");
    CHECK(!bws_out[1].timestamp.has_value());

    const std::string rs = tmp.path("rs.csv");
    const std::vector<RsResponse> rs_in = {
        {"a", "ann1", -4, std::nullopt},
        {"b", "ann2", 3, 1700000500},
    };
    write_rs_responses(rs, rs_in, run_meta());
    const std::vector<RsResponse> rs_out = read_rs_responses(rs);
    REQUIRE(rs_out.size() == 2);
    CHECK(rs_out[0].rating == -4);
    CHECK(!rs_out[0].timestamp.has_value());
    CHECK(rs_out[1].rating == 3);
    CHECK(rs_out[1].timestamp == std::optional<std::int64_t>(1700000500));
}

TEST_CASE("response readers reject malformed fields") {
    TempDir tmp;
    const std::string bad_rating = tmp.path("bad_rating.csv");
    spit(bad_rating, "item_id,annotator_id,rating,timestamp\na,ann1,soso,\n");
    CHECK_THROWS_WITH_AS(read_rs_responses(bad_rating),
                         (bad_rating + ":2: invalid rating: 'soso'").c_str(), ParseError);

    const std::string huge = tmp.path("huge.csv");
    spit(huge, "item_id,annotator_id,rating,timestamp\na,ann1,2000000,\n");
    CHECK_THROWS_WITH_AS(read_rs_responses(huge),
                         (huge + ":2: rating out of range: '2000000'").c_str(), ParseError);

    const std::string bad_ts = tmp.path("bad_ts.csv");
    spit(bad_ts, "tuple_id,annotator_id,best_id,worst_id,timestamp\nt1,ann1,a,b,noon\n");
    CHECK_THROWS_WITH_AS(read_bws_responses(bad_ts),
                         (bad_ts + ":2: invalid timestamp: 'noon'").c_str(), ParseError);

    const std::string blank = tmp.path("blank.csv");
    spit(blank, "tuple_id,annotator_id,best_id,worst_id,timestamp\nt1,,a,b,\n");
    CHECK_THROWS_WITH_AS(read_bws_responses(blank),
                         (blank + ":2: annotator id must not be empty").c_str(), ParseError);
}

TEST_CASE("score tables round-trip and the header identifies the method") {
    TempDir tmp;
    const std::string bws = tmp.path("bws_scores.csv");
    ScoreTable bws_table;
    bws_table.method = ScoreMethod::bws;
    ScoreEntry e1;
    e1.item_id = "b";
    e1.score = 0.25;
    e1.n_best = 3;
    e1.n_worst = 1;
    e1.n_appearances = 8;
    ScoreEntry e2;
    e2.item_id = "a";
    e2.score = -0.5;
    e2.n_best = 1;
    e2.n_worst = 5;
    e2.n_appearances = 8;
    bws_table.entries = {e1, e2};
    write_scores(bws, bws_table, run_meta());

    const ScoreTable bws_back = read_scores(bws);
    CHECK(bws_back.method == ScoreMethod::bws);
    CHECK(!bws_back.normalized);
    REQUIRE(bws_back.entries.size() == 2);
    // Reader sorts by item id regardless of file order.
    CHECK(bws_back.entries[0].item_id == "a");
    CHECK(bws_back.entries[0].score == -0.5);
    CHECK(bws_back.entries[0].n_worst == 5);
    CHECK(bws_back.entries[1].item_id == "b");
    CHECK(bws_back.entries[1].n_appearances == 8);

    const std::string rs = tmp.path("rs_scores.csv");
    ScoreTable rs_table;
    rs_table.method = ScoreMethod::rs;
    rs_table.normalized = true;
    ScoreEntry r1;
    r1.item_id = "a";
    r1.score = 0.75;
    r1.sd = 0.5;
    r1.n_ratings = 4;
    rs_table.entries = {r1};
    write_scores(rs, rs_table, run_meta());

    const std::string text = slurp(rs);
    CHECK(text.find("# normalized: 1\n") != std::string::npos);
    CHECK(text.find("item_id,mean,sd,n_ratings\n") != std::string::npos);

    const ScoreTable rs_back = read_scores(rs);
    CHECK(rs_back.method == ScoreMethod::rs);
    CHECK(rs_back.normalized);
    REQUIRE(rs_back.entries.size() == 1);
    CHECK(rs_back.entries[0].score == 0.75);
    CHECK(rs_back.entries[0].sd == 0.5);
    CHECK(rs_back.entries[0].n_ratings == 4);
}

TEST_CASE("score reader rejects unknown headers and duplicate items") {
    TempDir tmp;
    const std::string odd = tmp.path("odd.csv");
    spit(odd, "item_id,value\na,1.0\n");
    CHECK_THROWS_WITH_AS(read_scores(odd),
                         (odd + ":1: unrecognized score table header: item_id,value").c_str(),
                         ParseError);

    const std::string dup = tmp.path("dup.csv");
    spit(dup, "item_id,mean,sd,n_ratings\na,1.0,0.0,2\na,2.0,0.0,2\n");
    CHECK_THROWS_WITH_AS(read_scores(dup), (dup + ":3: duplicate item id: a").c_str(),
                         ParseError);
}

TEST_CASE("gold key files dispatch on the header") {
    TempDir tmp;
    const std::string bws = tmp.path("gold_bws.csv");
    const std::vector<BwsGold> bws_in = {{"t1", "a", "d"}, {"t2", "b", "c"}};
    write_bws_gold(bws, bws_in, run_meta());
    const GoldKey bws_key = read_gold(bws);
    CHECK(bws_key.kind == GoldKind::bws);
    REQUIRE(bws_key.bws.size() == 2);
    CHECK(bws_key.bws[1].tuple_id == "t2");
    CHECK(bws_key.bws[1].gold_best == "b");
    CHECK(bws_key.bws[1].gold_worst == "c");
    CHECK(bws_key.rs.empty());

    const std::string rs = tmp.path("gold_rs.csv");
    std::vector<RsGoldInterval> rs_in(1);
    rs_in[0].item_id = "easy";
    rs_in[0].min_rating = 3;
    rs_in[0].max_rating = 4;
    write_rs_gold(rs, rs_in, run_meta());
    const GoldKey rs_key = read_gold(rs);
    CHECK(rs_key.kind == GoldKind::rs);
    REQUIRE(rs_key.rs.size() == 1);
    CHECK(rs_key.rs[0].min_rating == 3);
    CHECK(rs_key.rs[0].max_rating == 4);
    CHECK(rs_key.bws.empty());

    const std::string odd = tmp.path("odd.csv");
    spit(odd, "who,what,when\nx,y,z\n");
    CHECK_THROWS_WITH_AS(read_gold(odd),
                         (odd + ":1: unrecognized gold key header: who,what,when").c_str(),
                         ParseError);
}

TEST_CASE("annotator stats rows carry a status and blank accuracy without gold") {
    TempDir tmp;
    const std::string path = tmp.path("annotators.csv");
    AnnotatorGoldStats kept;
    kept.annotator_id = "ann1";
    kept.gold_seen = 10;
    kept.gold_correct = 7;
    kept.accuracy = 0.7;
    kept.rejected = false;
    AnnotatorGoldStats rejected;
    rejected.annotator_id = "ann2";
    rejected.gold_seen = 10;
    rejected.gold_correct = 3;
    rejected.accuracy = 0.3;
    rejected.rejected = true;
    AnnotatorGoldStats fresh;
    fresh.annotator_id = "ann3";
    fresh.gold_seen = 0;
    fresh.gold_correct = 0;
    fresh.accuracy = 1.0;
    fresh.rejected = false;
    write_annotator_stats(path, std::vector<AnnotatorGoldStats>{kept, rejected, fresh},
                          run_meta());

    const CsvFile csv = read_csv(path);
    REQUIRE(csv.records.size() == 3);
    CHECK(csv.header == std::vector<std::string>{"annotator_id", "status", "gold_seen",
                                                 "gold_correct", "accuracy"});
    CHECK(csv.records[0].fields ==
          std::vector<std::string>{"ann1", "kept", "10", "7", "0.700000"});
    CHECK(csv.records[1].fields ==
          std::vector<std::string>{"ann2", "rejected", "10", "3", "0.300000"});
    CHECK(csv.records[2].fields == std::vector<std::string>{"ann3", "no_gold", "0", "0", ""});
}

TEST_CASE("reliability reports round-trip through their key=value form") {
    TempDir tmp;
    const std::string path = tmp.path("shr.txt");
    ShrReport report;
    report.method = ScoreMethod::rs;
    report.unit_kind = UnitKind::per_item;
    report.trials = 2;
    report.seed = 42;
    report.annotations_per_unit = 3;
    report.budget = 36;
    report.mean_rho = 0.8125;
    report.sd_rho = 0.0625;
    report.mean_r = 0.75;
    report.sd_r = 0.125;
    ShrTrial t1;
    t1.trial = 1;
    t1.rho = 0.875;
    t1.r = 0.875;
    t1.items_used = 12;
    ShrTrial t2;
    t2.trial = 2;
    t2.rho = 0.75;
    t2.r = 0.625;
    t2.items_used = 11;
    report.per_trial = {t1, t2};
    write_shr_report(path, report, run_meta());

    const ShrReport back = read_shr_report(path);
    CHECK(back.method == ScoreMethod::rs);
    CHECK(back.unit_kind == UnitKind::per_item);
    CHECK(back.trials == 2);
    CHECK(back.seed == 42);
    CHECK(back.annotations_per_unit == std::optional<std::int64_t>(3));
    CHECK(back.budget == 36);
    CHECK(back.mean_rho == 0.8125);
    CHECK(back.sd_rho == 0.0625);
    CHECK(back.mean_r == 0.75);
    CHECK(back.sd_r == 0.125);
    REQUIRE(back.per_trial.size() == 2);
    CHECK(back.per_trial[0].rho == 0.875);
    CHECK(back.per_trial[1].r == 0.625);
    CHECK(back.per_trial[1].items_used == 11);

    // Without k the line is omitted and reads back as unset.
    report.annotations_per_unit.reset();
    const std::string no_k = tmp.path("shr_no_k.txt");
    write_shr_report(no_k, report, run_meta());
    CHECK(slurp(no_k).find("k=") == std::string::npos);
    CHECK(!read_shr_report(no_k).annotations_per_unit.has_value());
}

TEST_CASE("reliability report reader rejects structural defects") {
    TempDir tmp;
    const std::string out_of_order = tmp.path("order.txt");
    spit(out_of_order,
         "trials=2\ntrial,rho,r,items_used\n2,0.5,0.5,10\n1,0.5,0.5,10\n");
    CHECK_THROWS_WITH_AS(read_shr_report(out_of_order),
                         (out_of_order + ":3: trial rows out of order").c_str(), ParseError);

    const std::string no_trials = tmp.path("no_trials.txt");
    spit(no_trials, "mean_rho=0.5\ntrial,rho,r,items_used\n1,0.5,0.5,10\n");
    CHECK_THROWS_AS(read_shr_report(no_trials), ParseError);

    const std::string mismatch = tmp.path("mismatch.txt");
    spit(mismatch, "trials=3\ntrial,rho,r,items_used\n1,0.5,0.5,10\n");
    CHECK_THROWS_WITH_AS(read_shr_report(mismatch),
                         (mismatch + ":3: trial count does not match trial rows").c_str(),
                         ParseError);

    const std::string no_header = tmp.path("no_header.txt");
    spit(no_header, "trials=0\n");
    CHECK_THROWS_AS(read_shr_report(no_header), ParseError);

    const std::string bad_kind = tmp.path("bad_kind.txt");
    spit(bad_kind, "trials=0\nunit_kind=per-day\ntrial,rho,r,items_used\n");
    CHECK_THROWS_WITH_AS(read_shr_report(bad_kind),
                         (bad_kind + ":2: invalid unit_kind: 'per-day'").c_str(), ParseError);
}

TEST_CASE("comparison and difference test writers emit one data row") {
    TempDir tmp;
    const std::string cmp = tmp.path("comparison.csv");
    ComparisonReport report;
    report.item_count = 40;
    report.mean_abs_score_diff = 0.03125;
    report.mean_abs_rank_diff = 1.5;
    report.rho = 0.9375;
    report.r = 0.875;
    write_comparison(cmp, report, run_meta());
    const CsvFile cmp_csv = read_csv(cmp);
    REQUIRE(cmp_csv.records.size() == 1);
    CHECK(cmp_csv.records[0].fields ==
          std::vector<std::string>{"40", "0.031250", "1.500000", "0.937500", "0.875000"});

    const std::string diff = tmp.path("difference.csv");
    ShrDifference result;
    result.mean_difference = 0.03;
    result.p_value = 0.0198;
    result.resamples = 10000;
    result.seed = 7;
    write_difference_test(diff, result, run_meta());
    const CsvFile diff_csv = read_csv(diff);
    CHECK(diff_csv.header ==
          std::vector<std::string>{"mean_difference", "p_value", "resamples", "seed"});
    REQUIRE(diff_csv.records.size() == 1);
    CHECK(diff_csv.records[0].fields ==
          std::vector<std::string>{"0.030000", "0.019800", "10000", "7"});
}

TEST_CASE("subset tables keep skipped rows with empty metric cells") {
    TempDir tmp;
    const std::string cmp = tmp.path("subsets.csv");
    SubsetCompareRow all;
    all.category = "all terms";
    all.item_count = 6;
    all.report.item_count = 6;
    all.report.mean_abs_score_diff = 0.125;
    all.report.mean_abs_rank_diff = 0.5;
    all.report.rho = 1.0;
    all.report.r = 0.9375;
    SubsetCompareRow tiny;
    tiny.category = "sizes";
    tiny.item_count = 1;
    tiny.skipped = true;
    tiny.skip_reason = "fewer than 2 items in category";
    write_subset_compare(cmp, std::vector<SubsetCompareRow>{all, tiny}, run_meta());

    const CsvFile cmp_csv = read_csv(cmp);
    REQUIRE(cmp_csv.records.size() == 2);
    CHECK(cmp_csv.records[0].fields ==
          std::vector<std::string>{"all terms", "6", "ok", "6", "0.125000", "0.500000",
                                   "1.000000", "0.937500"});
    CHECK(cmp_csv.records[1].fields ==
          std::vector<std::string>{"sizes", "1", "skipped: fewer than 2 items in category",
                                   "", "", "", "", ""});

    const std::string shr = tmp.path("subset_shr.csv");
    SubsetShrRow ok;
    ok.category = "colors";
    ok.item_count = 4;
    ok.mean_rho = 0.875;
    ok.mean_r = 0.8125;
    SubsetShrRow skipped;
    skipped.category = "(uncategorized)";
    skipped.item_count = 1;
    skipped.skipped = true;
    skipped.skip_reason = "fewer than 2 items in category";
    write_subset_shr(shr, std::vector<SubsetShrRow>{ok, skipped}, run_meta());

    const CsvFile shr_csv = read_csv(shr);
    REQUIRE(shr_csv.records.size() == 2);
    CHECK(shr_csv.records[0].fields ==
          std::vector<std::string>{"colors", "4", "ok", "0.875000", "0.812500"});
    CHECK(shr_csv.records[1].fields ==
          std::vector<std::string>{"(uncategorized)", "1",
                                   "skipped: fewer than 2 items in category", "", ""});
}

TEST_CASE("consistency files put the summary in metadata and bins in rows") {
    TempDir tmp;
    const std::string path = tmp.path("consistency.csv");
    ConsistencyReport report;
    report.pair_count = 3;
    report.inconsistent_count = 2;
    report.inconsistency_rate = 2.0 / 3.0;
    report.mean_abs_diff = 1.5;
    ConsistencyBin near;
    near.bin = 0;
    near.pair_count = 2;
    near.rate = 0.5;
    near.low_support = true;
    ConsistencyBin far;
    far.bin = 1;
    far.pair_count = 1;
    far.rate = 1.0;
    far.low_support = true;
    report.bins = {near, far};
    write_consistency(path, report, run_meta());

    const CsvFile csv = read_csv(path);
    CHECK(csv.meta("pair_count") == "3");
    CHECK(csv.meta("inconsistent_count") == "2");
    CHECK(csv.meta("inconsistency_rate") == "0.666667");
    CHECK(csv.meta("mean_abs_diff") == "1.500000");
    REQUIRE(csv.records.size() == 2);
    CHECK(csv.records[0].fields ==
          std::vector<std::string>{"0", "0", "12", "2", "0.500000", "1"});
    CHECK(csv.records[1].fields ==
          std::vector<std::string>{"1", "12", "24", "1", "1.000000", "1"});
}

TEST_CASE("sweep files keep skipped cells and flag them in metadata") {
    TempDir tmp;
    const std::string path = tmp.path("sweep.csv");
    SweepCell skipped;
    skipped.budget = 1;
    skipped.method = ScoreMethod::bws;
    skipped.skipped = true;
    skipped.skip_reason = "fewer than 2 responses per tuple";
    SweepCell ok;
    ok.budget = 2;
    ok.method = ScoreMethod::rs;
    ok.report.mean_rho = 0.75;
    ok.report.sd_rho = 0.0625;
    ok.report.mean_r = 0.8125;
    ok.report.sd_r = 0.03125;
    write_sweep(path, std::vector<SweepCell>{skipped, ok}, run_meta());

    const CsvFile csv = read_csv(path);
    CHECK(csv.meta("warning") ==
          "budget 1N bws skipped: fewer than 2 responses per tuple");
    REQUIRE(csv.records.size() == 2);
    CHECK(csv.records[0].fields ==
          std::vector<std::string>{"1", "bws", "", "", "", ""});
    CHECK(csv.records[1].fields == std::vector<std::string>{"2", "rs", "0.750000", "0.062500",
                                                            "0.812500", "0.031250"});
}

TEST_CASE("world files round-trip the seed in metadata") {
    TempDir tmp;
    const std::string path = tmp.path("world.csv");
    const ItemSet items(std::vector<Item>{{"b", "b", ""}, {"a", "a", ""}});
    LatentWorld world;
    world.seed = 99;
    world.true_scores = {{"a", 0.25}, {"b", -0.5}};
    write_world(path, world, items, run_meta());

    const std::string text = slurp(path);
    CHECK(text.find("# world_seed: 99\n") != std::string::npos);
    // Rows follow the item set's order, not map order.
    CHECK(text.find("b,-0.500000\na,0.250000\n") != std::string::npos);

    const LatentWorld back = read_world(path);
    CHECK(back.seed == 99);
    CHECK(back.true_score("a") == 0.25);
    CHECK(back.true_score("b") == -0.5);

    // A file without the seed comment still loads.
    const std::string bare = tmp.path("bare.csv");
    spit(bare, "item_id,true_score\na,0.125000\n");
    const LatentWorld bare_world = read_world(bare);
    CHECK(bare_world.seed == 0);
    CHECK(bare_world.true_score("a") == 0.125);

    const std::string dup = tmp.path("dup.csv");
    spit(dup, "item_id,true_score\na,0.1\na,0.2\n");
    CHECK_THROWS_WITH_AS(read_world(dup), (dup + ":3: duplicate item id: a").c_str(),
                         ParseError);
}

TEST_CASE("item id lists round-trip with quoting") {
    TempDir tmp;
    const std::string path = tmp.path("ids.csv");
    const std::vector<std::string> ids = {"plain", "with,comma", "with \"quote\""};
    write_item_id_list(path, ids, run_meta());
    CHECK(read_item_id_list(path) == ids);
}

TEST_CASE("design reports record scalar facts in metadata and histograms in rows") {
    TempDir tmp;
    const std::string path = tmp.path("report.csv");
    DesignReport report;
    report.tuple_count = 2;
    report.tuple_size = 4;
    report.item_count = 5;
    report.appearances = {{"a", 2}, {"b", 2}, {"c", 2}, {"d", 1}, {"e", 1}};
    report.min_appearances = 1;
    report.max_appearances = 2;
    report.appearance_sum = 8;
    report.within_tuple_duplicates = 0;
    report.duplicate_tuples = 0;
    report.pair_cooccurrence = {{0, 2}, {1, 6}, {2, 2}};
    write_design_report(path, report, run_meta());

    const CsvFile csv = read_csv(path);
    CHECK(csv.meta("tuple_count") == "2");
    CHECK(csv.meta("tuple_size") == "4");
    CHECK(csv.meta("item_count") == "5");
    CHECK(csv.meta("min_appearances") == "1");
    CHECK(csv.meta("max_appearances") == "2");
    CHECK(csv.meta("appearance_sum") == "8");
    CHECK(csv.meta("within_tuple_duplicates") == "0");
    CHECK(csv.meta("duplicate_tuples") == "0");
    CHECK(csv.meta("unknown_item_count") == "0");
    CHECK(csv.meta("balanced") == "1");
    REQUIRE(csv.records.size() == 5);
    CHECK(csv.records[0].fields == std::vector<std::string>{"appearances", "1", "2"});
    CHECK(csv.records[1].fields == std::vector<std::string>{"appearances", "2", "3"});
    CHECK(csv.records[2].fields == std::vector<std::string>{"pair_cooccurrence", "0", "2"});
    CHECK(csv.records[4].fields == std::vector<std::string>{"pair_cooccurrence", "2", "2"});
}

TEST_CASE("writers are deterministic byte for byte") {
    TempDir tmp;
    ScoreTable table;
    table.method = ScoreMethod::rs;
    ScoreEntry entry;
    entry.item_id = "a";
    entry.score = 1.0 / 3.0;
    entry.sd = 0.470970;
    entry.n_ratings = 3;
    table.entries = {entry};
    write_scores(tmp.path("once.csv"), table, run_meta());
    write_scores(tmp.path("twice.csv"), table, run_meta());
    CHECK(slurp(tmp.path("once.csv")) == slurp(tmp.path("twice.csv")));

    ShrReport report;
    report.trials = 1;
    ShrTrial trial;
    trial.trial = 1;
    trial.rho = 0.5;
    trial.r = 0.5;
    trial.items_used = 10;
    report.per_trial = {trial};
    write_shr_report(tmp.path("shr1.txt"), report, run_meta());
    write_shr_report(tmp.path("shr2.txt"), report, run_meta());
    CHECK(slurp(tmp.path("shr1.txt")) == slurp(tmp.path("shr2.txt")));
}
