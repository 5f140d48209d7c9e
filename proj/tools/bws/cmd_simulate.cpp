#include <filesystem>
#include <iostream>
#include <memory>

#include "bwskit/csv.hpp"
#include "bwskit/rng.hpp"
#include "bwskit/simulate.hpp"
#include "common.hpp"

namespace bwscli {

namespace {

// Shared source flags: either an item file or a synthetic item count.
struct ItemSource {
    std::string items;
    std::int64_t n_items = 0;
};

void add_item_source(CLI::App* cmd, ItemSource& source) {
    auto* items = cmd->add_option("--items", source.items, "item file");
    auto* n_items =
        cmd->add_option("--n-items", source.n_items, "generate this many synthetic items");
    items->excludes(n_items);
    n_items->excludes(items);
}

bwskit::ItemSet load_items(const ItemSource& source) {
    if (!source.items.empty()) return bwskit::read_items(source.items);
    if (source.n_items > 0) return synthetic_items(source.n_items);
    throw CLI::ValidationError("items", "one of --items or --n-items is required");
}

void describe_items(bwskit::Metadata& meta, const ItemSource& source) {
    if (!source.items.empty()) {
        meta.add("items", source.items);
    } else {
        meta.add("n_items", source.n_items);
    }
}

void add_simulate(CLI::App& app) {
    struct Options {
        ItemSource source;
        std::uint64_t world_seed = 0;
        std::string method = "both";
        std::string m_expr = "2N";
        int n = 4;
        std::int64_t k = 0;
        double noise = 0.25;
        double bias = 0.15;
        std::int64_t annotators = 20;
        std::string scale = "-4:4";
        std::uint64_t seed = 0;
        std::string out_dir;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd =
        app.add_subcommand("simulate", "generate synthetic-annotator response files");
    add_item_source(cmd, options->source);
    cmd->add_option("--world-seed", options->world_seed, "latent true-score seed")->required();
    cmd->add_option("--method", options->method, "bws, rs or both")->capture_default_str();
    cmd->add_option("--m", options->m_expr, "tuple count: integer or multiple like 2N")
        ->capture_default_str();
    cmd->add_option("--n", options->n, "items per tuple")->capture_default_str();
    cmd->add_option("--k", options->k, "responses per tuple / ratings per item")->required();
    cmd->add_option("--noise", options->noise, "perception noise sd")->capture_default_str();
    cmd->add_option("--bias", options->bias, "per-annotator rating bias sd")
        ->capture_default_str();
    cmd->add_option("--annotators", options->annotators, "annotator pool size")
        ->capture_default_str();
    cmd->add_option("--scale", options->scale, "rating scale lo:hi")->capture_default_str();
    cmd->add_option("--seed", options->seed, "simulation seed")->required();
    cmd->add_option("--out-dir", options->out_dir, "output directory")->required();
    cmd->callback([options] {
        if (options->method != "bws" && options->method != "rs" &&
            options->method != "both") {
            throw CLI::ValidationError("simulate", "--method must be bws, rs or both");
        }
        const bwskit::ItemSet items = load_items(options->source);
        const bwskit::LatentWorld world = bwskit::make_world(items, options->world_seed);
        const bwskit::AnnotatorModel model{options->noise, options->bias,
                                           options->annotators};
        const bwskit::ScaleConfig scale = parse_scale(options->scale);
        const std::filesystem::path dir(options->out_dir);
        std::filesystem::create_directories(dir);

        bwskit::Metadata meta = base_meta("simulate");
        describe_items(meta, options->source);
        meta.add("world_seed", options->world_seed);
        meta.add("method", options->method);
        meta.add("k", options->k);
        meta.add("noise", options->noise);
        meta.add("bias", options->bias);
        meta.add("annotators", options->annotators);
        meta.add("scale", options->scale);
        meta.add("seed", options->seed);

        if (options->source.items.empty()) {
            bwskit::write_items((dir / "items.csv").string(), items, meta);
            std::cout << "wrote " << (dir / "items.csv").string() << "\n";
        }
        bwskit::write_world((dir / "world.csv").string(), world, items, meta);
        std::cout << "wrote " << (dir / "world.csv").string() << "\n";

        if (options->method == "bws" || options->method == "both") {
            const std::int64_t m = resolve_m(options->m_expr, items.size());
            const bwskit::DesignSpec spec{
                options->n, m, bwskit::mix_seed(options->seed, bwskit::fnv1a64("tuples"))};
            const bwskit::TupleSet tuples = bwskit::generate_tuples(items, spec);
            bwskit::Metadata bws_meta = meta;
            bws_meta.add("m", m);
            bws_meta.add("n", static_cast<std::int64_t>(options->n));
            bwskit::write_tuples((dir / "tuples.csv").string(), tuples, bws_meta);
            const std::vector<bwskit::BwsResponse> responses = bwskit::simulate_bws(
                world, tuples, options->k, model,
                bwskit::mix_seed(options->seed, bwskit::fnv1a64("bws")));
            bwskit::write_bws_responses((dir / "bws_responses.csv").string(), responses,
                                        bws_meta);
            std::cout << "wrote " << (dir / "tuples.csv").string() << "\n";
            std::cout << "wrote " << (dir / "bws_responses.csv").string() << " ("
                      << responses.size() << " responses)\n";
        }
        if (options->method == "rs" || options->method == "both") {
            const std::vector<bwskit::RsResponse> responses = bwskit::simulate_rs(
                world, items, options->k, model, scale,
                bwskit::mix_seed(options->seed, bwskit::fnv1a64("rs")));
            bwskit::write_rs_responses((dir / "rs_responses.csv").string(), responses, meta);
            std::cout << "wrote " << (dir / "rs_responses.csv").string() << " ("
                      << responses.size() << " ratings)\n";
        }
    });
}

void add_sweep(CLI::App& app) {
    struct Options {
        ItemSource source;
        std::uint64_t world_seed = 0;
        std::string m_expr = "2N";
        int n = 4;
        std::string budgets = "1,2,3,4,5";
        std::int64_t trials = 100;
        double noise = 0.25;
        double bias = 0.15;
        std::int64_t annotators = 20;
        std::string scale = "-4:4";
        std::uint64_t seed = 0;
        std::string out;
        std::string report_dir;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand(
        "sweep", "split-half reliability of both methods across annotation budgets");
    add_item_source(cmd, options->source);
    cmd->add_option("--world-seed", options->world_seed, "latent true-score seed")->required();
    cmd->add_option("--m", options->m_expr, "tuple count: integer or multiple like 2N")
        ->capture_default_str();
    cmd->add_option("--n", options->n, "items per tuple")->capture_default_str();
    cmd->add_option("--budgets", options->budgets,
                    "per-half annotation budgets as multiples of N")
        ->capture_default_str();
    cmd->add_option("--trials", options->trials, "split trials per budget")
        ->capture_default_str();
    cmd->add_option("--noise", options->noise, "perception noise sd")->capture_default_str();
    cmd->add_option("--bias", options->bias, "per-annotator rating bias sd")
        ->capture_default_str();
    cmd->add_option("--annotators", options->annotators, "annotator pool size")
        ->capture_default_str();
    cmd->add_option("--scale", options->scale, "rating scale lo:hi")->capture_default_str();
    cmd->add_option("--seed", options->seed, "sweep seed")->required();
    cmd->add_option("--out", options->out, "output curve file")->required();
    cmd->add_option("--report-dir", options->report_dir,
                    "also write one reliability report per cell");
    cmd->callback([options] {
        const bwskit::ItemSet items = load_items(options->source);
        const bwskit::LatentWorld world = bwskit::make_world(items, options->world_seed);
        const bwskit::AnnotatorModel model{options->noise, options->bias,
                                           options->annotators};
        const std::int64_t m = resolve_m(options->m_expr, items.size());
        const bwskit::DesignSpec design{
            options->n, m, bwskit::mix_seed(options->seed, bwskit::fnv1a64("tuples"))};
        bwskit::SweepOptions sweep_options;
        sweep_options.budgets = parse_int_list(options->budgets);
        sweep_options.trials = options->trials;
        sweep_options.seed = options->seed;

        const std::vector<bwskit::SweepCell> cells = bwskit::run_budget_sweep(
            world, items, design, model, parse_scale(options->scale), sweep_options);

        bwskit::Metadata meta = base_meta("sweep");
        describe_items(meta, options->source);
        meta.add("world_seed", options->world_seed);
        meta.add("m", m);
        meta.add("n", static_cast<std::int64_t>(options->n));
        meta.add("budgets", options->budgets);
        meta.add("trials", options->trials);
        meta.add("noise", options->noise);
        meta.add("bias", options->bias);
        meta.add("annotators", options->annotators);
        meta.add("scale", options->scale);
        meta.add("seed", options->seed);
        bwskit::write_sweep(options->out, cells, meta);

        if (!options->report_dir.empty()) {
            const std::filesystem::path dir(options->report_dir);
            std::filesystem::create_directories(dir);
            for (const bwskit::SweepCell& cell : cells) {
                if (cell.skipped) continue;
                const std::string name = "shr_" + std::to_string(cell.budget) + "N_" +
                                         bwskit::to_string(cell.method) + ".txt";
                bwskit::write_shr_report((dir / name).string(), cell.report, meta);
            }
        }
        for (const bwskit::SweepCell& cell : cells) {
            std::cout << "budget " << cell.budget << "N " << bwskit::to_string(cell.method)
                      << ": ";
            if (cell.skipped) {
                std::cout << "skipped (" << cell.skip_reason << ")\n";
            } else {
                std::cout << "mean_rho=" << bwskit::format_real(cell.report.mean_rho)
                          << " mean_r=" << bwskit::format_real(cell.report.mean_r) << "\n";
            }
        }
    });
}

}  // namespace

void register_simulate_commands(CLI::App& app) {
    add_simulate(app);
    add_sweep(app);
}

}  // namespace bwscli
