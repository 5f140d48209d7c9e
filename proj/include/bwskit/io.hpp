#pragma once

// File formats. Every writer starts the file with "# key: value" metadata
// lines (tool version, invoking subcommand, parameters, seed), then a header
// row, then LF-terminated records. Readers tolerate missing metadata and
// CRLF input. Reals are written with 6 decimal places.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwskit/design.hpp"
#include "bwskit/model.hpp"
#include "bwskit/reliability.hpp"
#include "bwskit/scoring.hpp"
#include "bwskit/simulate.hpp"

namespace bwskit {

struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::int64_t value);
    void add(const std::string& key, std::uint64_t value);
    void add(const std::string& key, double value);
};

// items: id,text,category (the category column may be omitted entirely)
ItemSet read_items(const std::string& path);
void write_items(const std::string& path, const ItemSet& items, const Metadata& meta);

// tuples: tuple_id,item1,...,itemN; N inferred from the header. Member
// distinctness is deliberately not enforced here so that verify-tuples can
// load and report on malformed designs; tuple ids must still be unique.
TupleSet read_tuples(const std::string& path);
void write_tuples(const std::string& path, const TupleSet& tuples, const Metadata& meta);

// bws responses: tuple_id,annotator_id,best_id,worst_id,timestamp
std::vector<BwsResponse> read_bws_responses(const std::string& path);
void write_bws_responses(const std::string& path, std::span<const BwsResponse> responses,
                         const Metadata& meta);

// rs responses: item_id,annotator_id,rating,timestamp
std::vector<RsResponse> read_rs_responses(const std::string& path);
void write_rs_responses(const std::string& path, std::span<const RsResponse> responses,
                        const Metadata& meta);

// scores: item_id,score,n_best,n_worst,n_appearances (BWS) or
// item_id,mean,sd,n_ratings (RS); the header identifies the method and a
// "# normalized: 1" metadata line marks normalized tables.
ScoreTable read_scores(const std::string& path);
void write_scores(const std::string& path, const ScoreTable& table, const Metadata& meta);

// ranks: item_id,score,rank
void write_ranks(const std::string& path, std::span<const RankedItem> ranks,
                 const Metadata& meta);

// gold keys, distinguished by header:
//   tuple_id,gold_best,gold_worst  |  item_id,min_rating,max_rating
enum class GoldKind { bws, rs };

struct GoldKey {
    GoldKind kind = GoldKind::bws;
    std::vector<BwsGold> bws;
    std::vector<RsGoldInterval> rs;
};
GoldKey read_gold(const std::string& path);
void write_bws_gold(const std::string& path, std::span<const BwsGold> gold,
                    const Metadata& meta);
void write_rs_gold(const std::string& path, std::span<const RsGoldInterval> gold,
                   const Metadata& meta);

// annotator gold stats: annotator_id,status,gold_seen,gold_correct,accuracy
// where status is kept, rejected or no_gold (accuracy left empty for no_gold)
void write_annotator_stats(const std::string& path, std::span<const AnnotatorGoldStats> stats,
                           const Metadata& meta);

// split-half reliability report: metadata comments, then summary lines in
// key=value form (trials, means, sds, budget, unit_kind, method, seed, k),
// then trial,rho,r,items_used rows.
ShrReport read_shr_report(const std::string& path);
void write_shr_report(const std::string& path, const ShrReport& report, const Metadata& meta);

// comparison: item_count,mean_abs_score_diff,mean_abs_rank_diff,rho,r (1 row)
void write_comparison(const std::string& path, const ComparisonReport& report,
                      const Metadata& meta);

// subset rows: category,item_count,status,... with metric cells left empty
// on skipped rows
void write_subset_compare(const std::string& path, std::span<const SubsetCompareRow> rows,
                          const Metadata& meta);
void write_subset_shr(const std::string& path, std::span<const SubsetShrRow> rows,
                      const Metadata& meta);

// consistency: summary in metadata, bins as
// bin,from_hours,to_hours,pair_count,rate,low_support
void write_consistency(const std::string& path, const ConsistencyReport& report,
                       const Metadata& meta);

// sweep curve: budget,method,mean_rho,sd_rho,mean_r,sd_r; skipped cells keep
// their row with empty statistics and add a "# warning:" metadata line
void write_sweep(const std::string& path, std::span<const SweepCell> cells,
                 const Metadata& meta);

// latent world: item_id,true_score with the seed recorded in metadata
LatentWorld read_world(const std::string& path);
void write_world(const std::string& path, const LatentWorld& world, const ItemSet& items,
                 const Metadata& meta);

// single-column item id list: item_id
std::vector<std::string> read_item_id_list(const std::string& path);
void write_item_id_list(const std::string& path, std::span<const std::string> ids,
                        const Metadata& meta);

// permutation test result: mean_difference,p_value,resamples,seed (1 row)
void write_difference_test(const std::string& path, const ShrDifference& result,
                           const Metadata& meta);

// design verification: scalar facts in metadata, histograms as
// histogram,value,count rows (histogram is "appearances" or
// "pair_cooccurrence")
void write_design_report(const std::string& path, const DesignReport& report,
                         const Metadata& meta);

}  // namespace bwskit
