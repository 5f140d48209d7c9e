#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "bwskit/csv.hpp"
#include "bwskit/reliability.hpp"
#include "bwskit/rng.hpp"
#include "bwskit/simulate.hpp"
#include "common.hpp"

namespace bwscli {

namespace {

struct PipelineOptions {
    bool simulate = false;
    std::string items;
    std::int64_t n_items = 0;
    std::string tuples;
    std::string bws_responses;
    std::string rs_responses;
    std::string gold_bws;
    std::string gold_rs;
    double threshold = 0.70;
    std::string m_expr = "2N";
    int n = 4;
    std::int64_t k = 10;
    std::uint64_t world_seed = 0;
    double noise = 0.25;
    double bias = 0.15;
    std::int64_t annotators = 20;
    std::string scale = "-4:4";
    std::int64_t trials = 100;
    std::int64_t resamples = 10000;
    std::uint64_t seed = 0;
    std::string out_dir;
};

std::string fixed(double value) { return bwskit::format_real(value); }

void write_summary(const std::filesystem::path& path, const bwskit::Metadata& meta,
                   std::size_t item_count, const bwskit::TupleSet& tuples,
                   std::size_t bws_count, std::size_t rs_count,
                   const bwskit::ComparisonReport& comparison, const bwskit::ShrReport& shr_bws,
                   const bwskit::ShrReport& shr_rs, const bwskit::ShrDifference& diff) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    for (const auto& [key, value] : meta.entries) {
        out << "# " << key << ": " << value << "\n";
    }
    char line[160];

    out << "\n";
    std::snprintf(line, sizeof(line), "%-16s %zu\n", "items", item_count);
    out << line;
    std::snprintf(line, sizeof(line), "%-16s %zu (size %d)\n", "tuples", tuples.count(),
                  tuples.tuple_size);
    out << line;
    std::snprintf(line, sizeof(line), "%-16s %zu\n", "bws responses", bws_count);
    out << line;
    std::snprintf(line, sizeof(line), "%-16s %zu\n", "rs responses", rs_count);
    out << line;

    out << "\nscore comparison on the [0,1] scale (shared items: " << comparison.item_count
        << ")\n";
    std::snprintf(line, sizeof(line), "  %-22s %s\n", "mean |score diff|",
                  fixed(comparison.mean_abs_score_diff).c_str());
    out << line;
    std::snprintf(line, sizeof(line), "  %-22s %s\n", "mean |rank diff|",
                  fixed(comparison.mean_abs_rank_diff).c_str());
    out << line;
    std::snprintf(line, sizeof(line), "  %-22s %s\n", "spearman rho",
                  fixed(comparison.rho).c_str());
    out << line;
    std::snprintf(line, sizeof(line), "  %-22s %s\n", "pearson r", fixed(comparison.r).c_str());
    out << line;

    out << "\nsplit-half reliability (" << shr_bws.trials << " trials)\n";
    std::snprintf(line, sizeof(line), "  %-8s %-13s %-10s %-10s %-10s %-10s\n", "method",
                  "budget/half", "mean rho", "sd rho", "mean r", "sd r");
    out << line;
    for (const bwskit::ShrReport* report : {&shr_bws, &shr_rs}) {
        std::snprintf(line, sizeof(line), "  %-8s %-13lld %-10s %-10s %-10s %-10s\n",
                      bwskit::to_string(report->method).c_str(),
                      static_cast<long long>(report->budget), fixed(report->mean_rho).c_str(),
                      fixed(report->sd_rho).c_str(), fixed(report->mean_r).c_str(),
                      fixed(report->sd_r).c_str());
        out << line;
    }

    out << "\nbws - rs difference: mean delta rho " << fixed(diff.mean_difference) << ", p = "
        << fixed(diff.p_value) << " (" << diff.resamples << " resamples)\n";
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void run_pipeline(const PipelineOptions& options) {
    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    const bwskit::ScaleConfig scale = parse_scale(options.scale);

    bwskit::Metadata meta = base_meta("pipeline");
    meta.add("mode", options.simulate ? "simulate" : "ingest");
    meta.add("scale", options.scale);
    meta.add("trials", options.trials);
    meta.add("resamples", options.resamples);
    meta.add("seed", options.seed);

    bwskit::ItemSet items = synthetic_items(1);  // replaced below
    bwskit::TupleSet tuples;
    std::vector<bwskit::BwsResponse> bws_responses;
    std::vector<bwskit::RsResponse> rs_responses;

    if (options.simulate) {
        if (!options.items.empty()) {
            items = bwskit::read_items(options.items);
            meta.add("items", options.items);
        } else {
            items = synthetic_items(options.n_items > 0 ? options.n_items : 1000);
            meta.add("n_items", static_cast<std::int64_t>(items.size()));
            bwskit::write_items((dir / "items.csv").string(), items, meta);
        }
        meta.add("world_seed", options.world_seed);
        meta.add("k", options.k);
        meta.add("noise", options.noise);
        meta.add("bias", options.bias);
        meta.add("annotators", options.annotators);

        const std::int64_t m = resolve_m(options.m_expr, items.size());
        meta.add("m", m);
        meta.add("n", static_cast<std::int64_t>(options.n));
        const bwskit::MatchedBudget matched =
            bwskit::matched_budgets(static_cast<std::int64_t>(items.size()), m, options.k);
        if (!matched.integral) {
            throw std::runtime_error(
                "budgets cannot be matched: k*m/N = " + fixed(matched.exact) +
                " ratings per item is not an integer");
        }
        meta.add("k_rs", matched.ratings_per_item);

        const bwskit::LatentWorld world = bwskit::make_world(items, options.world_seed);
        bwskit::write_world((dir / "world.csv").string(), world, items, meta);

        const bwskit::DesignSpec design{
            options.n, m, bwskit::mix_seed(options.seed, bwskit::fnv1a64("tuples"))};
        tuples = bwskit::generate_tuples(items, design);
        bwskit::write_tuples((dir / "tuples.csv").string(), tuples, meta);

        const bwskit::AnnotatorModel model{options.noise, options.bias, options.annotators};
        bws_responses =
            bwskit::simulate_bws(world, tuples, options.k, model,
                                 bwskit::mix_seed(options.seed, bwskit::fnv1a64("bws")));
        rs_responses =
            bwskit::simulate_rs(world, items, matched.ratings_per_item, model, scale,
                                bwskit::mix_seed(options.seed, bwskit::fnv1a64("rs")));
        bwskit::write_bws_responses((dir / "bws_responses.csv").string(), bws_responses, meta);
        bwskit::write_rs_responses((dir / "rs_responses.csv").string(), rs_responses, meta);
    } else {
        for (const auto& [flag, value] :
             {std::pair<const char*, const std::string&>{"--items", options.items},
              {"--tuples", options.tuples},
              {"--bws-responses", options.bws_responses},
              {"--rs-responses", options.rs_responses}}) {
            if (value.empty()) {
                throw CLI::ValidationError("pipeline", std::string(flag) +
                                                           " is required without --simulate");
            }
        }
        items = bwskit::read_items(options.items);
        tuples = bwskit::read_tuples(options.tuples);
        bws_responses = bwskit::read_bws_responses(options.bws_responses);
        rs_responses = bwskit::read_rs_responses(options.rs_responses);
        meta.add("items", options.items);
        meta.add("tuples", options.tuples);
        meta.add("bws_responses", options.bws_responses);
        meta.add("rs_responses", options.rs_responses);

        if (!options.gold_bws.empty()) {
            const bwskit::GoldKey gold = bwskit::read_gold(options.gold_bws);
            if (gold.kind != bwskit::GoldKind::bws) {
                throw std::runtime_error("--gold-bws file is not a BWS gold key");
            }
            bwskit::validate_bws_gold(gold.bws, tuples);
            bwskit::BwsGoldFilterResult result =
                bwskit::filter_gold_bws(bws_responses, gold.bws, options.threshold);
            bwskit::write_annotator_stats((dir / "bws_annotators.csv").string(),
                                          result.annotators, meta);
            bwskit::write_bws_responses((dir / "bws_responses_filtered.csv").string(),
                                        result.retained, meta);
            bws_responses = std::move(result.retained);
            meta.add("gold_bws", options.gold_bws);
        }
        if (!options.gold_rs.empty()) {
            const bwskit::GoldKey gold = bwskit::read_gold(options.gold_rs);
            if (gold.kind != bwskit::GoldKind::rs) {
                throw std::runtime_error("--gold-rs file is not an RS gold key");
            }
            bwskit::validate_rs_gold(gold.rs, scale);
            bwskit::RsGoldFilterResult result =
                bwskit::filter_gold_rs(rs_responses, gold.rs, options.threshold);
            bwskit::write_annotator_stats((dir / "rs_annotators.csv").string(),
                                          result.annotators, meta);
            bwskit::write_rs_responses((dir / "rs_responses_filtered.csv").string(),
                                       result.retained, meta);
            rs_responses = std::move(result.retained);
            meta.add("gold_rs", options.gold_rs);
        }
    }

    const bwskit::ScoreTable bws_scores = bwskit::score_bws(tuples, bws_responses);
    const bwskit::ScoreTable rs_scores = bwskit::score_rs(rs_responses, scale);
    bwskit::write_scores((dir / "bws_scores.csv").string(), bws_scores, meta);
    bwskit::write_scores((dir / "rs_scores.csv").string(), rs_scores, meta);

    const bwskit::ScoreTable bws_norm = bwskit::normalize_scores(bws_scores, scale);
    const bwskit::ScoreTable rs_norm = bwskit::normalize_scores(rs_scores, scale);
    bwskit::write_scores((dir / "bws_scores_normalized.csv").string(), bws_norm, meta);
    bwskit::write_scores((dir / "rs_scores_normalized.csv").string(), rs_norm, meta);

    bwskit::write_ranks((dir / "bws_ranks.csv").string(), bwskit::rank_items(bws_norm), meta);
    bwskit::write_ranks((dir / "rs_ranks.csv").string(), bwskit::rank_items(rs_norm), meta);

    const bwskit::ComparisonReport comparison = bwskit::compare_methods(bws_norm, rs_norm);
    bwskit::write_comparison((dir / "comparison.csv").string(), comparison, meta);

    bwskit::ShrOptions shr_options;
    shr_options.trials = options.trials;
    shr_options.seed = bwskit::mix_seed(options.seed, bwskit::fnv1a64("shr"));
    const bwskit::ShrReport report_bws = bwskit::shr_bws(tuples, bws_responses, shr_options);
    const bwskit::ShrReport report_rs = bwskit::shr_rs(rs_responses, scale, shr_options);
    bwskit::write_shr_report((dir / "shr_bws.txt").string(), report_bws, meta);
    bwskit::write_shr_report((dir / "shr_rs.txt").string(), report_rs, meta);

    const bwskit::ShrDifference diff = bwskit::shr_difference_test(
        report_bws, report_rs, options.resamples,
        bwskit::mix_seed(options.seed, bwskit::fnv1a64("shr-test")));
    bwskit::write_difference_test((dir / "difference.csv").string(), diff, meta);

    write_summary(dir / "summary.txt", meta, items.size(), tuples, bws_responses.size(),
                  rs_responses.size(), comparison, report_bws, report_rs, diff);

    std::cout << "pipeline complete: " << (dir / "summary.txt").string() << "\n";
    std::cout << "  comparison: rho=" << fixed(comparison.rho)
              << " mean_abs_score_diff=" << fixed(comparison.mean_abs_score_diff) << "\n";
    std::cout << "  reliability: bws mean_rho=" << fixed(report_bws.mean_rho)
              << ", rs mean_rho=" << fixed(report_rs.mean_rho) << ", p=" << fixed(diff.p_value)
              << "\n";
}

}  // namespace

void register_pipeline_command(CLI::App& app) {
    auto options = std::make_shared<PipelineOptions>();
    CLI::App* cmd = app.add_subcommand(
        "pipeline", "end-to-end run: generate, simulate or ingest, filter, score, evaluate");
    cmd->add_flag("--simulate", options->simulate, "simulate responses instead of ingesting");
    cmd->add_option("--items", options->items, "item file");
    cmd->add_option("--n-items", options->n_items, "synthetic item count (simulate)")
        ->capture_default_str();
    cmd->add_option("--tuples", options->tuples, "tuple file (ingest)");
    cmd->add_option("--bws-responses", options->bws_responses, "BWS response file (ingest)");
    cmd->add_option("--rs-responses", options->rs_responses, "RS response file (ingest)");
    cmd->add_option("--gold-bws", options->gold_bws, "BWS gold key (ingest)");
    cmd->add_option("--gold-rs", options->gold_rs, "RS gold key (ingest)");
    cmd->add_option("--threshold", options->threshold, "gold accuracy threshold")
        ->capture_default_str();
    cmd->add_option("--m", options->m_expr, "tuple count: integer or multiple like 2N")
        ->capture_default_str();
    cmd->add_option("--n", options->n, "items per tuple")->capture_default_str();
    cmd->add_option("--k", options->k, "responses per tuple (simulate)")
        ->capture_default_str();
    cmd->add_option("--world-seed", options->world_seed, "latent true-score seed (simulate)");
    cmd->add_option("--noise", options->noise, "perception noise sd")->capture_default_str();
    cmd->add_option("--bias", options->bias, "per-annotator rating bias sd")
        ->capture_default_str();
    cmd->add_option("--annotators", options->annotators, "annotator pool size")
        ->capture_default_str();
    cmd->add_option("--scale", options->scale, "rating scale lo:hi")->capture_default_str();
    cmd->add_option("--trials", options->trials, "split trials")->capture_default_str();
    cmd->add_option("--resamples", options->resamples, "permutation resamples")
        ->capture_default_str();
    cmd->add_option("--seed", options->seed, "pipeline seed")->required();
    cmd->add_option("--out-dir", options->out_dir, "output directory")->required();
    cmd->callback([options] { run_pipeline(*options); });
}

}  // namespace bwscli
