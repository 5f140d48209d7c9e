#include <iostream>
#include <memory>

#include "bwskit/scoring.hpp"
#include "common.hpp"

namespace bwscli {

namespace {

void add_score_bws(CLI::App& app) {
    struct Options {
        std::string tuples;
        std::string responses;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("score-bws", "counting-procedure scores from responses");
    cmd->add_option("--tuples", options->tuples, "tuple file")->required();
    cmd->add_option("--responses", options->responses, "response file")->required();
    cmd->add_option("--out", options->out, "output score file")->required();
    cmd->callback([options] {
        const bwskit::TupleSet tuples = bwskit::read_tuples(options->tuples);
        const std::vector<bwskit::BwsResponse> responses =
            bwskit::read_bws_responses(options->responses);
        const bwskit::ScoreTable table = bwskit::score_bws(tuples, responses);

        bwskit::Metadata meta = base_meta("score-bws");
        meta.add("tuples", options->tuples);
        meta.add("responses", options->responses);
        meta.add("response_count", static_cast<std::int64_t>(responses.size()));
        bwskit::write_scores(options->out, table, meta);
        std::cout << "scored " << table.entries.size() << " items from " << responses.size()
                  << " responses\n";
    });
}

void add_score_rs(CLI::App& app) {
    struct Options {
        std::string responses;
        std::string scale = "-4:4";
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("score-rs", "mean ratings per item");
    cmd->add_option("--responses", options->responses, "response file")->required();
    cmd->add_option("--scale", options->scale, "rating scale lo:hi")->capture_default_str();
    cmd->add_option("--out", options->out, "output score file")->required();
    cmd->callback([options] {
        const std::vector<bwskit::RsResponse> responses =
            bwskit::read_rs_responses(options->responses);
        const bwskit::ScaleConfig scale = parse_scale(options->scale);
        const bwskit::ScoreTable table = bwskit::score_rs(responses, scale);

        bwskit::Metadata meta = base_meta("score-rs");
        meta.add("responses", options->responses);
        meta.add("scale", options->scale);
        meta.add("response_count", static_cast<std::int64_t>(responses.size()));
        bwskit::write_scores(options->out, table, meta);
        std::cout << "scored " << table.entries.size() << " items from " << responses.size()
                  << " ratings\n";
    });
}

void add_normalize(CLI::App& app) {
    struct Options {
        std::string scores;
        std::string scale = "-4:4";
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("normalize", "map scores onto [0,1]");
    cmd->add_option("--scores", options->scores, "score file")->required();
    cmd->add_option("--scale", options->scale, "rating scale lo:hi (RS tables)")
        ->capture_default_str();
    cmd->add_option("--out", options->out, "output score file")->required();
    cmd->callback([options] {
        const bwskit::ScoreTable table = bwskit::read_scores(options->scores);
        const bwskit::ScaleConfig scale = parse_scale(options->scale);
        const bwskit::ScoreTable normalized = bwskit::normalize_scores(table, scale);

        bwskit::Metadata meta = base_meta("normalize");
        meta.add("scores", options->scores);
        meta.add("scale", options->scale);
        bwskit::write_scores(options->out, normalized, meta);
        std::cout << "normalized " << normalized.entries.size() << " scores\n";
    });
}

void add_rank(CLI::App& app) {
    struct Options {
        std::string scores;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("rank", "rank items by score, ties averaged");
    cmd->add_option("--scores", options->scores, "score file")->required();
    cmd->add_option("--out", options->out, "output rank file")->required();
    cmd->callback([options] {
        const bwskit::ScoreTable table = bwskit::read_scores(options->scores);
        const std::vector<bwskit::RankedItem> ranks = bwskit::rank_items(table);

        bwskit::Metadata meta = base_meta("rank");
        meta.add("scores", options->scores);
        bwskit::write_ranks(options->out, ranks, meta);
        std::cout << "ranked " << ranks.size() << " items\n";
    });
}

void add_filter_gold(CLI::App& app) {
    struct Options {
        std::string responses;
        std::string gold;
        double threshold = 0.70;
        std::string tuples;
        std::string scale = "-4:4";
        std::string out;
        std::string rejects;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd =
        app.add_subcommand("filter-gold", "drop annotators with low gold-question accuracy");
    cmd->add_option("--responses", options->responses, "response file")->required();
    cmd->add_option("--gold", options->gold, "gold key file")->required();
    cmd->add_option("--threshold", options->threshold, "minimum gold accuracy")
        ->capture_default_str();
    cmd->add_option("--tuples", options->tuples,
                    "tuple file, validates BWS gold membership when given");
    cmd->add_option("--scale", options->scale, "rating scale lo:hi (RS gold)")
        ->capture_default_str();
    cmd->add_option("--out", options->out, "retained responses file")->required();
    cmd->add_option("--rejects", options->rejects, "per-annotator accuracy file")->required();
    cmd->callback([options] {
        const bwskit::GoldKey gold = bwskit::read_gold(options->gold);
        bwskit::Metadata meta = base_meta("filter-gold");
        meta.add("responses", options->responses);
        meta.add("gold", options->gold);
        meta.add("threshold", options->threshold);

        std::size_t total = 0;
        std::size_t kept = 0;
        std::size_t rejected = 0;
        std::vector<bwskit::AnnotatorGoldStats> stats;
        if (gold.kind == bwskit::GoldKind::bws) {
            const std::vector<bwskit::BwsResponse> responses =
                bwskit::read_bws_responses(options->responses);
            if (!options->tuples.empty()) {
                const bwskit::TupleSet tuples = bwskit::read_tuples(options->tuples);
                bwskit::validate_bws_gold(gold.bws, tuples);
            }
            const bwskit::BwsGoldFilterResult result =
                bwskit::filter_gold_bws(responses, gold.bws, options->threshold);
            bwskit::write_bws_responses(options->out, result.retained, meta);
            stats = result.annotators;
            total = responses.size();
            kept = result.retained.size();
        } else {
            const std::vector<bwskit::RsResponse> responses =
                bwskit::read_rs_responses(options->responses);
            bwskit::validate_rs_gold(gold.rs, parse_scale(options->scale));
            const bwskit::RsGoldFilterResult result =
                bwskit::filter_gold_rs(responses, gold.rs, options->threshold);
            bwskit::write_rs_responses(options->out, result.retained, meta);
            stats = result.annotators;
            total = responses.size();
            kept = result.retained.size();
        }
        for (const bwskit::AnnotatorGoldStats& s : stats) {
            if (s.rejected) ++rejected;
        }
        bwskit::write_annotator_stats(options->rejects, stats, meta);
        std::cout << "rejected " << rejected << " of " << stats.size() << " annotators; kept "
                  << kept << " of " << total << " responses\n";
    });
}

}  // namespace

void register_score_commands(CLI::App& app) {
    add_score_bws(app);
    add_score_rs(app);
    add_normalize(app);
    add_rank(app);
    add_filter_gold(app);
}

}  // namespace bwscli
