#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bwskit/design.hpp"
#include "bwskit/model.hpp"
#include "bwskit/reliability.hpp"
#include "bwskit/scoring.hpp"
#include "bwskit/simulate.hpp"
#include "bwskit/version.hpp"

namespace py = pybind11;

namespace {

bwskit::ShrOptions shr_options(std::int64_t trials, std::uint64_t seed,
                               std::optional<std::int64_t> k) {
    bwskit::ShrOptions options;
    options.trials = trials;
    options.seed = seed;
    options.annotations_per_unit = k;
    return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "best-worst scaling annotation toolkit";
    m.attr("__version__") = bwskit::kVersion;

    py::class_<bwskit::Item>(m, "Item")
        .def(py::init([](std::string id, std::optional<std::string> text, std::string category) {
                 std::string resolved = text.value_or(id);
                 return bwskit::Item{std::move(id), std::move(resolved), std::move(category)};
             }),
             py::arg("id"), py::arg("text") = std::nullopt, py::arg("category") = "")
        .def_readwrite("id", &bwskit::Item::id)
        .def_readwrite("text", &bwskit::Item::text)
        .def_readwrite("category", &bwskit::Item::category);

    py::class_<bwskit::ItemSet>(m, "ItemSet")
        .def(py::init<std::vector<bwskit::Item>>(), py::arg("items"))
        .def_property_readonly("items", &bwskit::ItemSet::items)
        .def("contains", &bwskit::ItemSet::contains, py::arg("id"))
        .def("__len__", &bwskit::ItemSet::size);

    py::class_<bwskit::Tuple4>(m, "Tuple")
        .def(py::init([](std::string tuple_id, std::vector<std::string> members) {
                 return bwskit::Tuple4{std::move(tuple_id), std::move(members)};
             }),
             py::arg("tuple_id"), py::arg("members"))
        .def_readwrite("tuple_id", &bwskit::Tuple4::tuple_id)
        .def_readwrite("members", &bwskit::Tuple4::members);

    py::class_<bwskit::TupleSet>(m, "TupleSet")
        .def(py::init([](std::vector<bwskit::Tuple4> tuples, int tuple_size) {
                 bwskit::TupleSet set;
                 set.tuples = std::move(tuples);
                 set.tuple_size = tuple_size;
                 set.build_index();
                 return set;
             }),
             py::arg("tuples"), py::arg("tuple_size") = 4)
        .def_readonly("tuples", &bwskit::TupleSet::tuples)
        .def_readonly("tuple_size", &bwskit::TupleSet::tuple_size)
        .def("__len__", &bwskit::TupleSet::count);

    py::class_<bwskit::BwsResponse>(m, "BwsResponse")
        .def(py::init([](std::string tuple_id, std::string annotator_id, std::string best_id,
                         std::string worst_id, std::optional<std::int64_t> timestamp) {
                 return bwskit::BwsResponse{std::move(tuple_id), std::move(annotator_id),
                                            std::move(best_id), std::move(worst_id), timestamp};
             }),
             py::arg("tuple_id"), py::arg("annotator_id"), py::arg("best_id"),
             py::arg("worst_id"), py::arg("timestamp") = std::nullopt)
        .def_readwrite("tuple_id", &bwskit::BwsResponse::tuple_id)
        .def_readwrite("annotator_id", &bwskit::BwsResponse::annotator_id)
        .def_readwrite("best_id", &bwskit::BwsResponse::best_id)
        .def_readwrite("worst_id", &bwskit::BwsResponse::worst_id)
        .def_readwrite("timestamp", &bwskit::BwsResponse::timestamp);

    py::class_<bwskit::RsResponse>(m, "RsResponse")
        .def(py::init([](std::string item_id, std::string annotator_id, int rating,
                         std::optional<std::int64_t> timestamp) {
                 return bwskit::RsResponse{std::move(item_id), std::move(annotator_id), rating,
                                           timestamp};
             }),
             py::arg("item_id"), py::arg("annotator_id"), py::arg("rating"),
             py::arg("timestamp") = std::nullopt)
        .def_readwrite("item_id", &bwskit::RsResponse::item_id)
        .def_readwrite("annotator_id", &bwskit::RsResponse::annotator_id)
        .def_readwrite("rating", &bwskit::RsResponse::rating)
        .def_readwrite("timestamp", &bwskit::RsResponse::timestamp);

    py::class_<bwskit::ScaleConfig>(m, "ScaleConfig")
        .def(py::init(&bwskit::make_scale), py::arg("min") = -4, py::arg("max") = 4)
        .def_readonly("min", &bwskit::ScaleConfig::min)
        .def_readonly("max", &bwskit::ScaleConfig::max)
        .def("range", &bwskit::ScaleConfig::range)
        .def("contains", &bwskit::ScaleConfig::contains, py::arg("rating"));

    py::class_<bwskit::Violation>(m, "Violation")
        .def_readonly("row", &bwskit::Violation::row)
        .def_readonly("message", &bwskit::Violation::message);

    m.def(
        "validate_bws_responses",
        [](const std::vector<bwskit::BwsResponse>& responses, const bwskit::TupleSet& tuples) {
            return bwskit::validate_bws_responses(responses, tuples);
        },
        py::arg("responses"), py::arg("tuples"));

    py::class_<bwskit::MatchedBudget>(m, "MatchedBudget")
        .def_readonly("integral", &bwskit::MatchedBudget::integral)
        .def_readonly("ratings_per_item", &bwskit::MatchedBudget::ratings_per_item)
        .def_readonly("exact", &bwskit::MatchedBudget::exact);

    m.def("matched_budgets", &bwskit::matched_budgets, py::arg("item_count"),
          py::arg("tuple_count"), py::arg("responses_per_tuple"));

    py::class_<bwskit::DesignSpec>(m, "DesignSpec")
        .def(py::init([](int tuple_size, std::int64_t tuple_count, std::uint64_t seed) {
                 return bwskit::DesignSpec{tuple_size, tuple_count, seed};
             }),
             py::arg("tuple_size") = 4, py::arg("tuple_count") = 0, py::arg("seed") = 0)
        .def_readwrite("tuple_size", &bwskit::DesignSpec::tuple_size)
        .def_readwrite("tuple_count", &bwskit::DesignSpec::tuple_count)
        .def_readwrite("seed", &bwskit::DesignSpec::seed);

    py::class_<bwskit::DesignReport>(m, "DesignReport")
        .def_readonly("tuple_count", &bwskit::DesignReport::tuple_count)
        .def_readonly("tuple_size", &bwskit::DesignReport::tuple_size)
        .def_readonly("item_count", &bwskit::DesignReport::item_count)
        .def_readonly("appearances", &bwskit::DesignReport::appearances)
        .def_readonly("min_appearances", &bwskit::DesignReport::min_appearances)
        .def_readonly("max_appearances", &bwskit::DesignReport::max_appearances)
        .def_readonly("appearance_sum", &bwskit::DesignReport::appearance_sum)
        .def_readonly("within_tuple_duplicates", &bwskit::DesignReport::within_tuple_duplicates)
        .def_readonly("duplicate_tuples", &bwskit::DesignReport::duplicate_tuples)
        .def_readonly("unknown_item_ids", &bwskit::DesignReport::unknown_item_ids)
        .def_readonly("pair_cooccurrence", &bwskit::DesignReport::pair_cooccurrence)
        .def("balanced", &bwskit::DesignReport::balanced);

    m.def("generate_tuples", &bwskit::generate_tuples, py::arg("items"), py::arg("spec"));
    m.def("verify_tuple_set", &bwskit::verify_tuple_set, py::arg("tuples"), py::arg("items"));

    py::enum_<bwskit::ScoreMethod>(m, "ScoreMethod")
        .value("bws", bwskit::ScoreMethod::bws)
        .value("rs", bwskit::ScoreMethod::rs);

    py::class_<bwskit::ScoreEntry>(m, "ScoreEntry")
        .def_readonly("item_id", &bwskit::ScoreEntry::item_id)
        .def_readonly("score", &bwskit::ScoreEntry::score)
        .def_readonly("sd", &bwskit::ScoreEntry::sd)
        .def_readonly("n_best", &bwskit::ScoreEntry::n_best)
        .def_readonly("n_worst", &bwskit::ScoreEntry::n_worst)
        .def_readonly("n_appearances", &bwskit::ScoreEntry::n_appearances)
        .def_readonly("n_ratings", &bwskit::ScoreEntry::n_ratings);

    py::class_<bwskit::ScoreTable>(m, "ScoreTable")
        .def_readonly("method", &bwskit::ScoreTable::method)
        .def_readonly("normalized", &bwskit::ScoreTable::normalized)
        .def_readonly("entries", &bwskit::ScoreTable::entries)
        .def("__len__", [](const bwskit::ScoreTable& table) { return table.entries.size(); });

    m.def(
        "score_bws",
        [](const bwskit::TupleSet& tuples, const std::vector<bwskit::BwsResponse>& responses) {
            return bwskit::score_bws(tuples, responses);
        },
        py::arg("tuples"), py::arg("responses"));
    m.def(
        "score_rs",
        [](const std::vector<bwskit::RsResponse>& responses, const bwskit::ScaleConfig& scale) {
            return bwskit::score_rs(responses, scale);
        },
        py::arg("responses"), py::arg("scale"));
    m.def("normalize_scores", &bwskit::normalize_scores, py::arg("table"), py::arg("scale"));

    py::class_<bwskit::RankedItem>(m, "RankedItem")
        .def_readonly("item_id", &bwskit::RankedItem::item_id)
        .def_readonly("score", &bwskit::RankedItem::score)
        .def_readonly("rank", &bwskit::RankedItem::rank);

    m.def("rank_items", &bwskit::rank_items, py::arg("table"));

    py::class_<bwskit::BwsGold>(m, "BwsGold")
        .def(py::init([](std::string tuple_id, std::string gold_best, std::string gold_worst) {
                 return bwskit::BwsGold{std::move(tuple_id), std::move(gold_best),
                                        std::move(gold_worst)};
             }),
             py::arg("tuple_id"), py::arg("gold_best"), py::arg("gold_worst"))
        .def_readwrite("tuple_id", &bwskit::BwsGold::tuple_id)
        .def_readwrite("gold_best", &bwskit::BwsGold::gold_best)
        .def_readwrite("gold_worst", &bwskit::BwsGold::gold_worst);

    py::class_<bwskit::RsGoldInterval>(m, "RsGoldInterval")
        .def(py::init([](std::string item_id, int min_rating, int max_rating) {
                 return bwskit::RsGoldInterval{std::move(item_id), min_rating, max_rating};
             }),
             py::arg("item_id"), py::arg("min_rating"), py::arg("max_rating"))
        .def_readwrite("item_id", &bwskit::RsGoldInterval::item_id)
        .def_readwrite("min_rating", &bwskit::RsGoldInterval::min_rating)
        .def_readwrite("max_rating", &bwskit::RsGoldInterval::max_rating);

    py::class_<bwskit::AnnotatorGoldStats>(m, "AnnotatorGoldStats")
        .def_readonly("annotator_id", &bwskit::AnnotatorGoldStats::annotator_id)
        .def_readonly("gold_seen", &bwskit::AnnotatorGoldStats::gold_seen)
        .def_readonly("gold_correct", &bwskit::AnnotatorGoldStats::gold_correct)
        .def_readonly("accuracy", &bwskit::AnnotatorGoldStats::accuracy)
        .def_readonly("rejected", &bwskit::AnnotatorGoldStats::rejected);

    py::class_<bwskit::BwsGoldFilterResult>(m, "BwsGoldFilterResult")
        .def_readonly("retained", &bwskit::BwsGoldFilterResult::retained)
        .def_readonly("annotators", &bwskit::BwsGoldFilterResult::annotators);

    py::class_<bwskit::RsGoldFilterResult>(m, "RsGoldFilterResult")
        .def_readonly("retained", &bwskit::RsGoldFilterResult::retained)
        .def_readonly("annotators", &bwskit::RsGoldFilterResult::annotators);

    m.def(
        "filter_gold_bws",
        [](const std::vector<bwskit::BwsResponse>& responses,
           const std::vector<bwskit::BwsGold>& gold, double threshold) {
            return bwskit::filter_gold_bws(responses, gold, threshold);
        },
        py::arg("responses"), py::arg("gold"), py::arg("threshold") = 0.70);
    m.def(
        "filter_gold_rs",
        [](const std::vector<bwskit::RsResponse>& responses,
           const std::vector<bwskit::RsGoldInterval>& gold, double threshold) {
            return bwskit::filter_gold_rs(responses, gold, threshold);
        },
        py::arg("responses"), py::arg("gold"), py::arg("threshold") = 0.70);

    py::enum_<bwskit::UnitKind>(m, "UnitKind")
        .value("per_item", bwskit::UnitKind::per_item)
        .value("per_tuple", bwskit::UnitKind::per_tuple);

    py::class_<bwskit::ShrTrial>(m, "ShrTrial")
        .def_readonly("trial", &bwskit::ShrTrial::trial)
        .def_readonly("rho", &bwskit::ShrTrial::rho)
        .def_readonly("r", &bwskit::ShrTrial::r)
        .def_readonly("items_used", &bwskit::ShrTrial::items_used)
        .def_readonly("items_dropped", &bwskit::ShrTrial::items_dropped);

    py::class_<bwskit::ShrReport>(m, "ShrReport")
        .def_readonly("method", &bwskit::ShrReport::method)
        .def_readonly("unit_kind", &bwskit::ShrReport::unit_kind)
        .def_readonly("trials", &bwskit::ShrReport::trials)
        .def_readonly("seed", &bwskit::ShrReport::seed)
        .def_readonly("annotations_per_unit", &bwskit::ShrReport::annotations_per_unit)
        .def_readonly("budget", &bwskit::ShrReport::budget)
        .def_readonly("per_trial", &bwskit::ShrReport::per_trial)
        .def_readonly("mean_rho", &bwskit::ShrReport::mean_rho)
        .def_readonly("sd_rho", &bwskit::ShrReport::sd_rho)
        .def_readonly("mean_r", &bwskit::ShrReport::mean_r)
        .def_readonly("sd_r", &bwskit::ShrReport::sd_r);

    m.def(
        "shr_bws",
        [](const bwskit::TupleSet& tuples, const std::vector<bwskit::BwsResponse>& responses,
           std::int64_t trials, std::uint64_t seed, std::optional<std::int64_t> k) {
            return bwskit::shr_bws(tuples, responses, shr_options(trials, seed, k));
        },
        py::arg("tuples"), py::arg("responses"), py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("k") = std::nullopt);
    m.def(
        "shr_rs",
        [](const std::vector<bwskit::RsResponse>& responses, const bwskit::ScaleConfig& scale,
           std::int64_t trials, std::uint64_t seed, std::optional<std::int64_t> k) {
            return bwskit::shr_rs(responses, scale, shr_options(trials, seed, k));
        },
        py::arg("responses"), py::arg("scale"), py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("k") = std::nullopt);

    py::class_<bwskit::ComparisonReport>(m, "ComparisonReport")
        .def_readonly("mean_abs_score_diff", &bwskit::ComparisonReport::mean_abs_score_diff)
        .def_readonly("mean_abs_rank_diff", &bwskit::ComparisonReport::mean_abs_rank_diff)
        .def_readonly("rho", &bwskit::ComparisonReport::rho)
        .def_readonly("r", &bwskit::ComparisonReport::r)
        .def_readonly("item_count", &bwskit::ComparisonReport::item_count);

    m.def("compare_methods", &bwskit::compare_methods, py::arg("a"), py::arg("b"));

    py::class_<bwskit::ShrDifference>(m, "ShrDifference")
        .def_readonly("mean_difference", &bwskit::ShrDifference::mean_difference)
        .def_readonly("p_value", &bwskit::ShrDifference::p_value)
        .def_readonly("resamples", &bwskit::ShrDifference::resamples)
        .def_readonly("seed", &bwskit::ShrDifference::seed);

    m.def("shr_difference_test", &bwskit::shr_difference_test, py::arg("a"), py::arg("b"),
          py::arg("resamples") = 10000, py::arg("seed") = 0);

    py::class_<bwskit::ConsistencyBin>(m, "ConsistencyBin")
        .def_readonly("bin", &bwskit::ConsistencyBin::bin)
        .def_readonly("pair_count", &bwskit::ConsistencyBin::pair_count)
        .def_readonly("rate", &bwskit::ConsistencyBin::rate)
        .def_readonly("low_support", &bwskit::ConsistencyBin::low_support);

    py::class_<bwskit::ConsistencyReport>(m, "ConsistencyReport")
        .def_readonly("pair_count", &bwskit::ConsistencyReport::pair_count)
        .def_readonly("inconsistent_count", &bwskit::ConsistencyReport::inconsistent_count)
        .def_readonly("inconsistency_rate", &bwskit::ConsistencyReport::inconsistency_rate)
        .def_readonly("mean_abs_diff", &bwskit::ConsistencyReport::mean_abs_diff)
        .def_readonly("bins", &bwskit::ConsistencyReport::bins);

    m.def(
        "repeat_consistency",
        [](const std::vector<bwskit::RsResponse>& responses,
           const std::vector<std::string>& repeated_ids) {
            return bwskit::repeat_consistency(responses, repeated_ids);
        },
        py::arg("responses"), py::arg("repeated_ids"));

    py::class_<bwskit::LatentWorld>(m, "LatentWorld")
        .def_readonly("seed", &bwskit::LatentWorld::seed)
        .def_readonly("true_scores", &bwskit::LatentWorld::true_scores)
        .def("true_score", &bwskit::LatentWorld::true_score, py::arg("item_id"));

    m.def("make_world", &bwskit::make_world, py::arg("items"), py::arg("seed"));

    py::class_<bwskit::AnnotatorModel>(m, "AnnotatorModel")
        .def(py::init([](double perception_noise_sd, double rs_bias_sd,
                         std::int64_t annotator_count) {
                 return bwskit::AnnotatorModel{perception_noise_sd, rs_bias_sd, annotator_count};
             }),
             py::arg("perception_noise_sd") = 0.25, py::arg("rs_bias_sd") = 0.15,
             py::arg("annotator_count") = 20)
        .def_readwrite("perception_noise_sd", &bwskit::AnnotatorModel::perception_noise_sd)
        .def_readwrite("rs_bias_sd", &bwskit::AnnotatorModel::rs_bias_sd)
        .def_readwrite("annotator_count", &bwskit::AnnotatorModel::annotator_count);

    m.def("simulate_bws", &bwskit::simulate_bws, py::arg("world"), py::arg("tuples"),
          py::arg("k"), py::arg("model"), py::arg("seed"));
    m.def("simulate_rs", &bwskit::simulate_rs, py::arg("world"), py::arg("items"), py::arg("k"),
          py::arg("model"), py::arg("scale"), py::arg("seed"));

    py::class_<bwskit::SweepCell>(m, "SweepCell")
        .def_readonly("budget", &bwskit::SweepCell::budget)
        .def_readonly("method", &bwskit::SweepCell::method)
        .def_readonly("skipped", &bwskit::SweepCell::skipped)
        .def_readonly("skip_reason", &bwskit::SweepCell::skip_reason)
        .def_readonly("report", &bwskit::SweepCell::report);

    m.def(
        "run_budget_sweep",
        [](const bwskit::LatentWorld& world, const bwskit::ItemSet& items,
           const bwskit::DesignSpec& design, const bwskit::AnnotatorModel& model,
           const bwskit::ScaleConfig& scale, std::vector<std::int64_t> budgets,
           std::int64_t trials, std::uint64_t seed) {
            bwskit::SweepOptions options;
            options.budgets = std::move(budgets);
            options.trials = trials;
            options.seed = seed;
            return bwskit::run_budget_sweep(world, items, design, model, scale, options);
        },
        py::arg("world"), py::arg("items"), py::arg("design"), py::arg("model"),
        py::arg("scale"), py::arg("budgets"), py::arg("trials") = 100, py::arg("seed") = 0);
}
