#include <iostream>
#include <memory>
#include <unordered_set>

#include "bwskit/csv.hpp"
#include "bwskit/reliability.hpp"
#include "common.hpp"

namespace bwscli {

namespace {

// Restricts a score table to ids contained in the item set.
bwskit::ScoreTable restrict_to_items(const bwskit::ScoreTable& table,
                                     const bwskit::ItemSet& items) {
    bwskit::ScoreTable out;
    out.method = table.method;
    out.normalized = table.normalized;
    for (const bwskit::ScoreEntry& entry : table.entries) {
        if (items.contains(entry.item_id)) out.entries.push_back(entry);
    }
    return out;
}

void add_shr(CLI::App& app) {
    struct Options {
        std::string method;
        std::string responses;
        std::string tuples;
        std::string scale = "-4:4";
        std::int64_t trials = 100;
        std::uint64_t seed = 0;
        std::int64_t k = 0;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("shr", "split-half reliability over repeated trials");
    cmd->add_option("--method", options->method, "bws or rs")->required();
    cmd->add_option("--responses", options->responses, "response file")->required();
    cmd->add_option("--tuples", options->tuples, "tuple file (required for bws)");
    cmd->add_option("--scale", options->scale, "rating scale lo:hi (rs)")
        ->capture_default_str();
    cmd->add_option("--trials", options->trials, "number of split trials")
        ->capture_default_str();
    cmd->add_option("--seed", options->seed, "trial seed")->required();
    auto* k_option =
        cmd->add_option("--k", options->k, "annotations per unit per half (subsamples)");
    cmd->add_option("--out", options->out, "output report file")->required();
    cmd->callback([options, k_option] {
        const bwskit::ScoreMethod method = bwskit::score_method_from_string(options->method);
        bwskit::ShrOptions shr_options;
        shr_options.trials = options->trials;
        shr_options.seed = options->seed;
        if (k_option->count() > 0) shr_options.annotations_per_unit = options->k;

        bwskit::ShrReport report;
        if (method == bwskit::ScoreMethod::bws) {
            if (options->tuples.empty()) {
                throw CLI::ValidationError("shr", "--tuples is required with --method bws");
            }
            const bwskit::TupleSet tuples = bwskit::read_tuples(options->tuples);
            const std::vector<bwskit::BwsResponse> responses =
                bwskit::read_bws_responses(options->responses);
            report = bwskit::shr_bws(tuples, responses, shr_options);
        } else {
            const std::vector<bwskit::RsResponse> responses =
                bwskit::read_rs_responses(options->responses);
            report = bwskit::shr_rs(responses, parse_scale(options->scale), shr_options);
        }

        bwskit::Metadata meta = base_meta("shr");
        meta.add("method", options->method);
        meta.add("responses", options->responses);
        if (!options->tuples.empty()) meta.add("tuples", options->tuples);
        meta.add("trials", options->trials);
        meta.add("seed", options->seed);
        if (shr_options.annotations_per_unit) meta.add("k", *shr_options.annotations_per_unit);
        bwskit::write_shr_report(options->out, report, meta);
        std::cout << "mean_rho=" << bwskit::format_real(report.mean_rho)
                  << " mean_r=" << bwskit::format_real(report.mean_r) << " (trials "
                  << report.trials << ", budget " << report.budget << " per half)\n";
    });
}

void add_shr_test(CLI::App& app) {
    struct Options {
        std::string a;
        std::string b;
        std::int64_t resamples = 10000;
        std::uint64_t seed = 0;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand(
        "shr-test", "paired sign-flip permutation test on two reliability reports");
    cmd->add_option("--a", options->a, "first report file")->required();
    cmd->add_option("--b", options->b, "second report file")->required();
    cmd->add_option("--resamples", options->resamples, "permutation resamples")
        ->capture_default_str();
    cmd->add_option("--seed", options->seed, "resampling seed")->required();
    cmd->add_option("--out", options->out, "optional result file");
    cmd->callback([options] {
        const bwskit::ShrReport a = bwskit::read_shr_report(options->a);
        const bwskit::ShrReport b = bwskit::read_shr_report(options->b);
        const bwskit::ShrDifference result =
            bwskit::shr_difference_test(a, b, options->resamples, options->seed);

        std::cout << "mean_difference=" << bwskit::format_real(result.mean_difference)
                  << " p_value=" << bwskit::format_real(result.p_value) << " (resamples "
                  << result.resamples << ")\n";
        if (!options->out.empty()) {
            bwskit::Metadata meta = base_meta("shr-test");
            meta.add("a", options->a);
            meta.add("b", options->b);
            meta.add("resamples", options->resamples);
            meta.add("seed", options->seed);
            bwskit::write_difference_test(options->out, result, meta);
        }
    });
}

void add_compare(CLI::App& app) {
    struct Options {
        std::string a;
        std::string b;
        std::string items;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd =
        app.add_subcommand("compare", "score and rank agreement between two score tables");
    cmd->add_option("--a", options->a, "first normalized score file")->required();
    cmd->add_option("--b", options->b, "second normalized score file")->required();
    cmd->add_option("--items", options->items, "optional item file restricting the comparison");
    cmd->add_option("--out", options->out, "output report file")->required();
    cmd->callback([options] {
        bwskit::ScoreTable a = bwskit::read_scores(options->a);
        bwskit::ScoreTable b = bwskit::read_scores(options->b);
        if (!options->items.empty()) {
            const bwskit::ItemSet items = bwskit::read_items(options->items);
            a = restrict_to_items(a, items);
            b = restrict_to_items(b, items);
        }
        const bwskit::ComparisonReport report = bwskit::compare_methods(a, b);

        bwskit::Metadata meta = base_meta("compare");
        meta.add("a", options->a);
        meta.add("b", options->b);
        if (!options->items.empty()) meta.add("items", options->items);
        bwskit::write_comparison(options->out, report, meta);
        std::cout << "items=" << report.item_count
                  << " mean_abs_score_diff=" << bwskit::format_real(report.mean_abs_score_diff)
                  << " mean_abs_rank_diff=" << bwskit::format_real(report.mean_abs_rank_diff)
                  << " rho=" << bwskit::format_real(report.rho)
                  << " r=" << bwskit::format_real(report.r) << "\n";
    });
}

void add_subsets(CLI::App& app) {
    struct Options {
        std::string analysis;
        std::string by = "category";
        std::string items;
        std::string out;
        // compare analysis
        std::string a;
        std::string b;
        // shr analysis
        std::string method;
        std::string responses;
        std::string tuples;
        std::string scale = "-4:4";
        std::int64_t trials = 100;
        std::uint64_t seed = 0;
        std::int64_t k = 0;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("subsets", "per-category breakdown of an analysis");
    cmd->add_option("--analysis", options->analysis, "compare or shr")->required();
    cmd->add_option("--by", options->by, "grouping field (category)")->capture_default_str();
    cmd->add_option("--items", options->items, "item file carrying categories")->required();
    cmd->add_option("--out", options->out, "output report file")->required();
    cmd->add_option("--a", options->a, "first score file (compare)");
    cmd->add_option("--b", options->b, "second score file (compare)");
    cmd->add_option("--method", options->method, "bws or rs (shr)");
    cmd->add_option("--responses", options->responses, "response file (shr)");
    cmd->add_option("--tuples", options->tuples, "tuple file (shr, bws)");
    cmd->add_option("--scale", options->scale, "rating scale lo:hi (shr, rs)")
        ->capture_default_str();
    cmd->add_option("--trials", options->trials, "split trials (shr)")->capture_default_str();
    auto* seed_option = cmd->add_option("--seed", options->seed, "trial seed (shr)");
    auto* k_option = cmd->add_option("--k", options->k, "annotations per unit per half (shr)");
    cmd->callback([options, seed_option, k_option] {
        if (options->by != "category") {
            throw CLI::ValidationError("subsets", "unsupported grouping '" + options->by + "'");
        }
        const bwskit::ItemSet items = bwskit::read_items(options->items);
        bwskit::Metadata meta = base_meta("subsets");
        meta.add("analysis", options->analysis);
        meta.add("by", options->by);
        meta.add("items", options->items);

        if (options->analysis == "compare") {
            if (options->a.empty() || options->b.empty()) {
                throw CLI::ValidationError("subsets",
                                           "--a and --b are required with --analysis compare");
            }
            const bwskit::ScoreTable a = bwskit::read_scores(options->a);
            const bwskit::ScoreTable b = bwskit::read_scores(options->b);
            const std::vector<bwskit::SubsetCompareRow> rows =
                bwskit::subset_compare(items, a, b);
            meta.add("a", options->a);
            meta.add("b", options->b);
            bwskit::write_subset_compare(options->out, rows, meta);
            std::cout << "wrote " << rows.size() << " category rows\n";
            return;
        }
        if (options->analysis != "shr") {
            throw CLI::ValidationError("subsets", "--analysis must be compare or shr");
        }
        if (options->method.empty() || options->responses.empty()) {
            throw CLI::ValidationError(
                "subsets", "--method and --responses are required with --analysis shr");
        }
        if (seed_option->count() == 0) {
            throw CLI::ValidationError("subsets", "--seed is required with --analysis shr");
        }
        bwskit::ShrOptions shr_options;
        shr_options.trials = options->trials;
        shr_options.seed = options->seed;
        if (k_option->count() > 0) shr_options.annotations_per_unit = options->k;
        meta.add("method", options->method);
        meta.add("responses", options->responses);
        meta.add("trials", options->trials);
        meta.add("seed", options->seed);
        if (shr_options.annotations_per_unit) meta.add("k", *shr_options.annotations_per_unit);

        std::vector<bwskit::SubsetShrRow> rows;
        if (bwskit::score_method_from_string(options->method) == bwskit::ScoreMethod::bws) {
            if (options->tuples.empty()) {
                throw CLI::ValidationError("subsets", "--tuples is required with --method bws");
            }
            const bwskit::TupleSet tuples = bwskit::read_tuples(options->tuples);
            const std::vector<bwskit::BwsResponse> responses =
                bwskit::read_bws_responses(options->responses);
            meta.add("tuples", options->tuples);
            rows = bwskit::subset_shr_bws(items, tuples, responses, shr_options);
        } else {
            const std::vector<bwskit::RsResponse> responses =
                bwskit::read_rs_responses(options->responses);
            rows = bwskit::subset_shr_rs(items, responses, parse_scale(options->scale),
                                         shr_options);
        }
        bwskit::write_subset_shr(options->out, rows, meta);
        std::cout << "wrote " << rows.size() << " category rows\n";
    });
}

void add_consistency(CLI::App& app) {
    struct Options {
        std::string responses;
        std::string repeats;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand(
        "consistency", "intra-annotator agreement on repeatedly rated items");
    cmd->add_option("--responses", options->responses, "timestamped rating file")->required();
    cmd->add_option("--repeats", options->repeats, "item id list of repeated items")
        ->required();
    cmd->add_option("--out", options->out, "output report file")->required();
    cmd->callback([options] {
        const std::vector<bwskit::RsResponse> responses =
            bwskit::read_rs_responses(options->responses);
        const std::vector<std::string> repeats = bwskit::read_item_id_list(options->repeats);
        const bwskit::ConsistencyReport report = bwskit::repeat_consistency(responses, repeats);

        bwskit::Metadata meta = base_meta("consistency");
        meta.add("responses", options->responses);
        meta.add("repeats", options->repeats);
        bwskit::write_consistency(options->out, report, meta);
        std::cout << "pairs=" << report.pair_count
                  << " inconsistency_rate=" << bwskit::format_real(report.inconsistency_rate)
                  << " mean_abs_diff=" << bwskit::format_real(report.mean_abs_diff) << "\n";
    });
}

}  // namespace

void register_reliability_commands(CLI::App& app) {
    add_shr(app);
    add_shr_test(app);
    add_compare(app);
    add_subsets(app);
    add_consistency(app);
}

}  // namespace bwscli
