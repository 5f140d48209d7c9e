#include <iostream>
#include <memory>

#include "bwskit/design.hpp"
#include "common.hpp"

namespace bwscli {

namespace {

void add_gen_tuples(CLI::App& app) {
    struct Options {
        std::string items;
        std::string m_expr = "2N";
        int n = 4;
        std::uint64_t seed = 0;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("gen-tuples", "generate a balanced random tuple set");
    cmd->add_option("--items", options->items, "item file (id,text[,category])")->required();
    cmd->add_option("--m", options->m_expr, "tuple count: integer or multiple like 2N")
        ->capture_default_str();
    cmd->add_option("--n", options->n, "items per tuple")->capture_default_str();
    cmd->add_option("--seed", options->seed, "generation seed")->required();
    cmd->add_option("--out", options->out, "output tuple file")->required();
    cmd->callback([options] {
        const bwskit::ItemSet items = bwskit::read_items(options->items);
        const std::int64_t m = resolve_m(options->m_expr, items.size());
        const bwskit::DesignSpec spec{options->n, m, options->seed};
        const bwskit::TupleSet tuples = bwskit::generate_tuples(items, spec);

        bwskit::Metadata meta = base_meta("gen-tuples");
        meta.add("items", options->items);
        meta.add("n", static_cast<std::int64_t>(options->n));
        meta.add("m", m);
        meta.add("m_expr", options->m_expr);
        meta.add("seed", options->seed);
        bwskit::write_tuples(options->out, tuples, meta);
        std::cout << "wrote " << tuples.count() << " tuples of size " << options->n << " to "
                  << options->out << "\n";
    });
}

void add_verify_tuples(CLI::App& app) {
    struct Options {
        std::string tuples;
        std::string items;
        std::string out;
    };
    auto options = std::make_shared<Options>();
    CLI::App* cmd = app.add_subcommand("verify-tuples", "check tuple-set design constraints");
    cmd->add_option("--tuples", options->tuples, "tuple file")->required();
    cmd->add_option("--items", options->items, "item file")->required();
    cmd->add_option("--out", options->out, "optional report file");
    cmd->callback([options] {
        const bwskit::TupleSet tuples = bwskit::read_tuples(options->tuples);
        const bwskit::ItemSet items = bwskit::read_items(options->items);
        const bwskit::DesignReport report = bwskit::verify_tuple_set(tuples, items);

        std::cout << "tuples: " << report.tuple_count << " (size " << report.tuple_size
                  << ")\n";
        std::cout << "items: " << report.item_count << "\n";
        std::cout << "appearances per item: " << report.min_appearances << ".."
                  << report.max_appearances << (report.balanced() ? " (balanced)" : "")
                  << "\n";
        std::cout << "within-tuple duplicate slots: " << report.within_tuple_duplicates
                  << "\n";
        std::cout << "duplicate tuples: " << report.duplicate_tuples << "\n";
        std::cout << "unknown item ids: " << report.unknown_item_ids.size() << "\n";

        if (!options->out.empty()) {
            bwskit::Metadata meta = base_meta("verify-tuples");
            meta.add("tuples", options->tuples);
            meta.add("items", options->items);
            bwskit::write_design_report(options->out, report, meta);
        }
        if (report.within_tuple_duplicates > 0 || !report.unknown_item_ids.empty()) {
            throw std::runtime_error("tuple set fails verification");
        }
    });
}

}  // namespace

void register_design_commands(CLI::App& app) {
    add_gen_tuples(app);
    add_verify_tuples(app);
}

}  // namespace bwscli
