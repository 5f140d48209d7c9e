#include "bwskit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string_view>
#include <unordered_set>

#include "bwskit/csv.hpp"

namespace bwskit {

void Metadata::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}
void Metadata::add(const std::string& key, std::int64_t value) {
    add(key, std::to_string(value));
}
void Metadata::add(const std::string& key, std::uint64_t value) {
    add(key, std::to_string(value));
}
void Metadata::add(const std::string& key, double value) { add(key, format_real(value)); }

namespace {

std::int64_t parse_int64(const std::string& field, const std::string& path, std::size_t line,
                         const std::string& what) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError(path, line, "invalid " + what + ": '" + field + "'");
    }
    return value;
}

std::uint64_t parse_uint64(const std::string& field, const std::string& path, std::size_t line,
                           const std::string& what) {
    std::uint64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError(path, line, "invalid " + what + ": '" + field + "'");
    }
    return value;
}

int parse_rating(const std::string& field, const std::string& path, std::size_t line,
                 const std::string& what) {
    const std::int64_t value = parse_int64(field, path, line, what);
    if (value < -1000000 || value > 1000000) {
        throw ParseError(path, line, what + " out of range: '" + field + "'");
    }
    return static_cast<int>(value);
}

double parse_double(const std::string& field, const std::string& path, std::size_t line,
                    const std::string& what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError(path, line, "invalid " + what + ": '" + field + "'");
    }
    return value;
}

void require_nonempty(const std::string& field, const std::string& path, std::size_t line,
                      const std::string& what) {
    if (field.empty()) {
        throw ParseError(path, line, what + " must not be empty");
    }
}

void expect_header(const CsvFile& csv, const std::string& path,
                   std::initializer_list<std::string_view> expected) {
    bool ok = csv.header.size() == expected.size();
    if (ok) {
        std::size_t i = 0;
        for (std::string_view name : expected) {
            if (csv.header[i++] != name) {
                ok = false;
                break;
            }
        }
    }
    if (!ok) {
        std::string want;
        for (std::string_view name : expected) {
            if (!want.empty()) want += ",";
            want += std::string(name);
        }
        throw ParseError(path, csv.header_line,
                         "expected header '" + want + "', got '" + csv_join(csv.header) + "'");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    return out;
}

void write_meta(std::ofstream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta.entries) {
        out << "# " << key << ": " << value << "\n";
    }
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string timestamp_field(const std::optional<std::int64_t>& timestamp) {
    return timestamp ? std::to_string(*timestamp) : std::string();
}

std::optional<std::int64_t> parse_timestamp(const std::string& field, const std::string& path,
                                            std::size_t line) {
    if (field.empty()) return std::nullopt;
    return parse_int64(field, path, line, "timestamp");
}

}  // namespace

ItemSet read_items(const std::string& path) {
    const CsvFile csv = read_csv(path);
    const bool with_category = csv.header.size() == 3;
    if (with_category) {
        expect_header(csv, path, {"id", "text", "category"});
    } else {
        expect_header(csv, path, {"id", "text"});
    }
    std::vector<Item> items;
    items.reserve(csv.records.size());
    std::unordered_set<std::string> seen;
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "item id");
        if (!seen.insert(record.fields[0]).second) {
            throw ParseError(path, record.line, "duplicate item id: " + record.fields[0]);
        }
        Item item;
        item.id = record.fields[0];
        item.text = record.fields[1];
        item.category = with_category ? record.fields[2] : std::string();
        items.push_back(std::move(item));
    }
    if (items.empty()) {
        throw ParseError(path, csv.header_line, "item file has no rows");
    }
    return ItemSet(std::move(items));
}

void write_items(const std::string& path, const ItemSet& items, const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "id,text,category\n";
    for (const Item& item : items.items()) {
        out << csv_join({item.id, item.text, item.category}) << "\n";
    }
    finish(out, path);
}

TupleSet read_tuples(const std::string& path) {
    const CsvFile csv = read_csv(path);
    if (csv.header.size() < 3 || csv.header[0] != "tuple_id") {
        throw ParseError(path, csv.header_line,
                         "expected header 'tuple_id,item1,...', got '" +
                             csv_join(csv.header) + "'");
    }
    for (std::size_t i = 1; i < csv.header.size(); ++i) {
        if (csv.header[i] != "item" + std::to_string(i)) {
            throw ParseError(path, csv.header_line,
                             "expected column 'item" + std::to_string(i) + "', got '" +
                                 csv.header[i] + "'");
        }
    }
    TupleSet tuples;
    tuples.tuple_size = static_cast<int>(csv.header.size()) - 1;
    tuples.tuples.reserve(csv.records.size());
    std::unordered_set<std::string> seen;
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "tuple id");
        if (!seen.insert(record.fields[0]).second) {
            throw ParseError(path, record.line, "duplicate tuple id: " + record.fields[0]);
        }
        Tuple4 tuple;
        tuple.tuple_id = record.fields[0];
        tuple.members.reserve(csv.header.size() - 1);
        for (std::size_t i = 1; i < record.fields.size(); ++i) {
            require_nonempty(record.fields[i], path, record.line, "tuple member");
            tuple.members.push_back(record.fields[i]);
        }
        tuples.tuples.push_back(std::move(tuple));
    }
    tuples.build_index();
    return tuples;
}

void write_tuples(const std::string& path, const TupleSet& tuples, const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    std::vector<std::string> header{"tuple_id"};
    for (int i = 1; i <= tuples.tuple_size; ++i) header.push_back("item" + std::to_string(i));
    out << csv_join(header) << "\n";
    for (const Tuple4& tuple : tuples.tuples) {
        std::vector<std::string> fields{tuple.tuple_id};
        fields.insert(fields.end(), tuple.members.begin(), tuple.members.end());
        out << csv_join(fields) << "\n";
    }
    finish(out, path);
}

std::vector<BwsResponse> read_bws_responses(const std::string& path) {
    const CsvFile csv = read_csv(path);
    expect_header(csv, path, {"tuple_id", "annotator_id", "best_id", "worst_id", "timestamp"});
    std::vector<BwsResponse> responses;
    responses.reserve(csv.records.size());
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "tuple id");
        require_nonempty(record.fields[1], path, record.line, "annotator id");
        require_nonempty(record.fields[2], path, record.line, "best id");
        require_nonempty(record.fields[3], path, record.line, "worst id");
        BwsResponse response;
        response.tuple_id = record.fields[0];
        response.annotator_id = record.fields[1];
        response.best_id = record.fields[2];
        response.worst_id = record.fields[3];
        response.timestamp = parse_timestamp(record.fields[4], path, record.line);
        responses.push_back(std::move(response));
    }
    return responses;
}

void write_bws_responses(const std::string& path, std::span<const BwsResponse> responses,
                         const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "tuple_id,annotator_id,best_id,worst_id,timestamp\n";
    for (const BwsResponse& response : responses) {
        out << csv_join({response.tuple_id, response.annotator_id, response.best_id,
                         response.worst_id, timestamp_field(response.timestamp)})
            << "\n";
    }
    finish(out, path);
}

std::vector<RsResponse> read_rs_responses(const std::string& path) {
    const CsvFile csv = read_csv(path);
    expect_header(csv, path, {"item_id", "annotator_id", "rating", "timestamp"});
    std::vector<RsResponse> responses;
    responses.reserve(csv.records.size());
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "item id");
        require_nonempty(record.fields[1], path, record.line, "annotator id");
        RsResponse response;
        response.item_id = record.fields[0];
        response.annotator_id = record.fields[1];
        response.rating = parse_rating(record.fields[2], path, record.line, "rating");
        response.timestamp = parse_timestamp(record.fields[3], path, record.line);
        responses.push_back(std::move(response));
    }
    return responses;
}

void write_rs_responses(const std::string& path, std::span<const RsResponse> responses,
                        const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "item_id,annotator_id,rating,timestamp\n";
    for (const RsResponse& response : responses) {
        out << csv_join({response.item_id, response.annotator_id,
                         std::to_string(response.rating),
                         timestamp_field(response.timestamp)})
            << "\n";
    }
    finish(out, path);
}

ScoreTable read_scores(const std::string& path) {
    const CsvFile csv = read_csv(path);
    ScoreTable table;
    const std::string header = csv_join(csv.header);
    if (header == "item_id,score,n_best,n_worst,n_appearances") {
        table.method = ScoreMethod::bws;
    } else if (header == "item_id,mean,sd,n_ratings") {
        table.method = ScoreMethod::rs;
    } else {
        throw ParseError(path, csv.header_line, "unrecognized score table header: " + header);
    }
    table.normalized = csv.meta("normalized") == "1";

    std::unordered_set<std::string> seen;
    table.entries.reserve(csv.records.size());
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "item id");
        if (!seen.insert(record.fields[0]).second) {
            throw ParseError(path, record.line, "duplicate item id: " + record.fields[0]);
        }
        ScoreEntry entry;
        entry.item_id = record.fields[0];
        if (table.method == ScoreMethod::bws) {
            entry.score = parse_double(record.fields[1], path, record.line, "score");
            entry.n_best = parse_int64(record.fields[2], path, record.line, "n_best");
            entry.n_worst = parse_int64(record.fields[3], path, record.line, "n_worst");
            entry.n_appearances =
                parse_int64(record.fields[4], path, record.line, "n_appearances");
        } else {
            entry.score = parse_double(record.fields[1], path, record.line, "mean");
            entry.sd = parse_double(record.fields[2], path, record.line, "sd");
            entry.n_ratings = parse_int64(record.fields[3], path, record.line, "n_ratings");
        }
        table.entries.push_back(std::move(entry));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.item_id < b.item_id; });
    return table;
}

void write_scores(const std::string& path, const ScoreTable& table, const Metadata& meta) {
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    extended.add("method", to_string(table.method));
    if (table.normalized) extended.add("normalized", "1");
    write_meta(out, extended);
    if (table.method == ScoreMethod::bws) {
        out << "item_id,score,n_best,n_worst,n_appearances\n";
        for (const ScoreEntry& entry : table.entries) {
            out << csv_join({entry.item_id, format_real(entry.score),
                             std::to_string(entry.n_best), std::to_string(entry.n_worst),
                             std::to_string(entry.n_appearances)})
                << "\n";
        }
    } else {
        out << "item_id,mean,sd,n_ratings\n";
        for (const ScoreEntry& entry : table.entries) {
            out << csv_join({entry.item_id, format_real(entry.score), format_real(entry.sd),
                             std::to_string(entry.n_ratings)})
                << "\n";
        }
    }
    finish(out, path);
}

void write_ranks(const std::string& path, std::span<const RankedItem> ranks,
                 const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "item_id,score,rank\n";
    for (const RankedItem& item : ranks) {
        out << csv_join({item.item_id, format_real(item.score), format_real(item.rank)})
            << "\n";
    }
    finish(out, path);
}

GoldKey read_gold(const std::string& path) {
    const CsvFile csv = read_csv(path);
    const std::string header = csv_join(csv.header);
    GoldKey key;
    if (header == "tuple_id,gold_best,gold_worst") {
        key.kind = GoldKind::bws;
        for (const CsvRecord& record : csv.records) {
            require_nonempty(record.fields[0], path, record.line, "tuple id");
            require_nonempty(record.fields[1], path, record.line, "gold best");
            require_nonempty(record.fields[2], path, record.line, "gold worst");
            key.bws.push_back({record.fields[0], record.fields[1], record.fields[2]});
        }
    } else if (header == "item_id,min_rating,max_rating") {
        key.kind = GoldKind::rs;
        for (const CsvRecord& record : csv.records) {
            require_nonempty(record.fields[0], path, record.line, "item id");
            RsGoldInterval interval;
            interval.item_id = record.fields[0];
            interval.min_rating = parse_rating(record.fields[1], path, record.line, "min_rating");
            interval.max_rating = parse_rating(record.fields[2], path, record.line, "max_rating");
            key.rs.push_back(std::move(interval));
        }
    } else {
        throw ParseError(path, csv.header_line, "unrecognized gold key header: " + header);
    }
    return key;
}

void write_bws_gold(const std::string& path, std::span<const BwsGold> gold,
                    const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "tuple_id,gold_best,gold_worst\n";
    for (const BwsGold& g : gold) {
        out << csv_join({g.tuple_id, g.gold_best, g.gold_worst}) << "\n";
    }
    finish(out, path);
}

void write_rs_gold(const std::string& path, std::span<const RsGoldInterval> gold,
                   const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "item_id,min_rating,max_rating\n";
    for (const RsGoldInterval& g : gold) {
        out << csv_join({g.item_id, std::to_string(g.min_rating),
                         std::to_string(g.max_rating)})
            << "\n";
    }
    finish(out, path);
}

void write_annotator_stats(const std::string& path, std::span<const AnnotatorGoldStats> stats,
                           const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "annotator_id,status,gold_seen,gold_correct,accuracy\n";
    for (const AnnotatorGoldStats& s : stats) {
        const std::string status =
            s.rejected ? "rejected" : (s.gold_seen == 0 ? "no_gold" : "kept");
        const std::string accuracy = s.gold_seen == 0 ? "" : format_real(s.accuracy);
        out << csv_join({s.annotator_id, status, std::to_string(s.gold_seen),
                         std::to_string(s.gold_correct), accuracy})
            << "\n";
    }
    finish(out, path);
}

ShrReport read_shr_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read file: " + path);
    }
    ShrReport report;
    bool have_trials = false;
    bool have_k = false;
    std::string line;
    std::size_t line_no = 0;
    bool in_rows = false;
    std::size_t next_trial = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!in_rows) {
            if (line == "trial,rho,r,items_used") {
                in_rows = true;
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw ParseError(path, line_no, "expected key=value line or trial header");
            }
            const std::string key = line.substr(0, eq);
            const std::string value = line.substr(eq + 1);
            if (key == "trials") {
                report.trials = parse_int64(value, path, line_no, "trials");
                have_trials = true;
            } else if (key == "mean_rho") {
                report.mean_rho = parse_double(value, path, line_no, "mean_rho");
            } else if (key == "mean_r") {
                report.mean_r = parse_double(value, path, line_no, "mean_r");
            } else if (key == "sd_rho") {
                report.sd_rho = parse_double(value, path, line_no, "sd_rho");
            } else if (key == "sd_r") {
                report.sd_r = parse_double(value, path, line_no, "sd_r");
            } else if (key == "budget") {
                report.budget = parse_int64(value, path, line_no, "budget");
            } else if (key == "unit_kind") {
                if (value == "per-item") {
                    report.unit_kind = UnitKind::per_item;
                } else if (value == "per-tuple") {
                    report.unit_kind = UnitKind::per_tuple;
                } else {
                    throw ParseError(path, line_no, "invalid unit_kind: '" + value + "'");
                }
            } else if (key == "method") {
                report.method = score_method_from_string(value);
            } else if (key == "seed") {
                report.seed = parse_uint64(value, path, line_no, "seed");
            } else if (key == "k") {
                if (!value.empty()) {
                    report.annotations_per_unit = parse_int64(value, path, line_no, "k");
                }
                have_k = true;
            }
            // Unknown keys are ignored for forward compatibility.
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 4) {
            throw ParseError(path, line_no, "expected 4 fields, got " +
                                                std::to_string(fields.size()));
        }
        ShrTrial trial;
        trial.trial = parse_int64(fields[0], path, line_no, "trial");
        trial.rho = parse_double(fields[1], path, line_no, "rho");
        trial.r = parse_double(fields[2], path, line_no, "r");
        trial.items_used = parse_int64(fields[3], path, line_no, "items_used");
        if (trial.trial != static_cast<std::int64_t>(next_trial)) {
            throw ParseError(path, line_no, "trial rows out of order");
        }
        ++next_trial;
        report.per_trial.push_back(trial);
    }
    if (!in_rows) {
        throw ParseError(path, line_no, "missing 'trial,rho,r,items_used' header");
    }
    if (!have_trials) {
        throw ParseError(path, line_no, "missing trials= line");
    }
    if (report.trials != static_cast<std::int64_t>(report.per_trial.size())) {
        throw ParseError(path, line_no, "trial count does not match trial rows");
    }
    (void)have_k;
    return report;
}

void write_shr_report(const std::string& path, const ShrReport& report, const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "trials=" << report.trials << "\n";
    out << "mean_rho=" << format_real(report.mean_rho) << "\n";
    out << "mean_r=" << format_real(report.mean_r) << "\n";
    out << "sd_rho=" << format_real(report.sd_rho) << "\n";
    out << "sd_r=" << format_real(report.sd_r) << "\n";
    out << "budget=" << report.budget << "\n";
    out << "unit_kind=" << to_string(report.unit_kind) << "\n";
    out << "method=" << to_string(report.method) << "\n";
    out << "seed=" << report.seed << "\n";
    if (report.annotations_per_unit) {
        out << "k=" << *report.annotations_per_unit << "\n";
    }
    out << "trial,rho,r,items_used\n";
    for (const ShrTrial& trial : report.per_trial) {
        out << trial.trial << "," << format_real(trial.rho) << "," << format_real(trial.r)
            << "," << trial.items_used << "\n";
    }
    finish(out, path);
}

void write_comparison(const std::string& path, const ComparisonReport& report,
                      const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "item_count,mean_abs_score_diff,mean_abs_rank_diff,rho,r\n";
    out << csv_join({std::to_string(report.item_count),
                     format_real(report.mean_abs_score_diff),
                     format_real(report.mean_abs_rank_diff), format_real(report.rho),
                     format_real(report.r)})
        << "\n";
    finish(out, path);
}

void write_subset_compare(const std::string& path, std::span<const SubsetCompareRow> rows,
                          const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "category,item_count,status,shared_items,mean_abs_score_diff,mean_abs_rank_diff,"
           "rho,r\n";
    for (const SubsetCompareRow& row : rows) {
        std::vector<std::string> fields{row.category, std::to_string(row.item_count)};
        if (row.skipped) {
            fields.push_back("skipped: " + row.skip_reason);
            fields.insert(fields.end(), {"", "", "", "", ""});
        } else {
            fields.push_back("ok");
            fields.push_back(std::to_string(row.report.item_count));
            fields.push_back(format_real(row.report.mean_abs_score_diff));
            fields.push_back(format_real(row.report.mean_abs_rank_diff));
            fields.push_back(format_real(row.report.rho));
            fields.push_back(format_real(row.report.r));
        }
        out << csv_join(fields) << "\n";
    }
    finish(out, path);
}

void write_subset_shr(const std::string& path, std::span<const SubsetShrRow> rows,
                      const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "category,item_count,status,mean_rho,mean_r\n";
    for (const SubsetShrRow& row : rows) {
        std::vector<std::string> fields{row.category, std::to_string(row.item_count)};
        if (row.skipped) {
            fields.push_back("skipped: " + row.skip_reason);
            fields.insert(fields.end(), {"", ""});
        } else {
            fields.push_back("ok");
            fields.push_back(format_real(row.mean_rho));
            fields.push_back(format_real(row.mean_r));
        }
        out << csv_join(fields) << "\n";
    }
    finish(out, path);
}

void write_consistency(const std::string& path, const ConsistencyReport& report,
                       const Metadata& meta) {
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    extended.add("pair_count", report.pair_count);
    extended.add("inconsistent_count", report.inconsistent_count);
    extended.add("inconsistency_rate", report.inconsistency_rate);
    extended.add("mean_abs_diff", report.mean_abs_diff);
    write_meta(out, extended);
    out << "bin,from_hours,to_hours,pair_count,rate,low_support\n";
    for (const ConsistencyBin& bin : report.bins) {
        out << csv_join({std::to_string(bin.bin), std::to_string(bin.bin * 12),
                         std::to_string((bin.bin + 1) * 12), std::to_string(bin.pair_count),
                         format_real(bin.rate), bin.low_support ? "1" : "0"})
            << "\n";
    }
    finish(out, path);
}

void write_sweep(const std::string& path, std::span<const SweepCell> cells,
                 const Metadata& meta) {
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    for (const SweepCell& cell : cells) {
        if (cell.skipped) {
            extended.add("warning", "budget " + std::to_string(cell.budget) + "N " +
                                        to_string(cell.method) + " skipped: " +
                                        cell.skip_reason);
        }
    }
    write_meta(out, extended);
    out << "budget,method,mean_rho,sd_rho,mean_r,sd_r\n";
    for (const SweepCell& cell : cells) {
        std::vector<std::string> fields{std::to_string(cell.budget), to_string(cell.method)};
        if (cell.skipped) {
            fields.insert(fields.end(), {"", "", "", ""});
        } else {
            fields.push_back(format_real(cell.report.mean_rho));
            fields.push_back(format_real(cell.report.sd_rho));
            fields.push_back(format_real(cell.report.mean_r));
            fields.push_back(format_real(cell.report.sd_r));
        }
        out << csv_join(fields) << "\n";
    }
    finish(out, path);
}

LatentWorld read_world(const std::string& path) {
    const CsvFile csv = read_csv(path);
    expect_header(csv, path, {"item_id", "true_score"});
    LatentWorld world;
    if (csv.has_meta("world_seed")) {
        world.seed = parse_uint64(csv.meta("world_seed"), path, csv.header_line, "world_seed");
    }
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "item id");
        if (world.true_scores.contains(record.fields[0])) {
            throw ParseError(path, record.line, "duplicate item id: " + record.fields[0]);
        }
        world.true_scores[record.fields[0]] =
            parse_double(record.fields[1], path, record.line, "true_score");
    }
    return world;
}

void write_world(const std::string& path, const LatentWorld& world, const ItemSet& items,
                 const Metadata& meta) {
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    extended.add("world_seed", world.seed);
    write_meta(out, extended);
    out << "item_id,true_score\n";
    for (const Item& item : items.items()) {
        out << csv_join({item.id, format_real(world.true_score(item.id))}) << "\n";
    }
    finish(out, path);
}

std::vector<std::string> read_item_id_list(const std::string& path) {
    const CsvFile csv = read_csv(path);
    expect_header(csv, path, {"item_id"});
    std::vector<std::string> ids;
    ids.reserve(csv.records.size());
    for (const CsvRecord& record : csv.records) {
        require_nonempty(record.fields[0], path, record.line, "item id");
        ids.push_back(record.fields[0]);
    }
    return ids;
}

void write_item_id_list(const std::string& path, std::span<const std::string> ids,
                        const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "item_id\n";
    for (const std::string& id : ids) {
        out << csv_escape(id) << "\n";
    }
    finish(out, path);
}

void write_difference_test(const std::string& path, const ShrDifference& result,
                           const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "mean_difference,p_value,resamples,seed\n";
    out << csv_join({format_real(result.mean_difference), format_real(result.p_value),
                     std::to_string(result.resamples), std::to_string(result.seed)})
        << "\n";
    finish(out, path);
}

void write_design_report(const std::string& path, const DesignReport& report,
                         const Metadata& meta) {
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    extended.add("tuple_count", report.tuple_count);
    extended.add("tuple_size", static_cast<std::int64_t>(report.tuple_size));
    extended.add("item_count", report.item_count);
    extended.add("min_appearances", report.min_appearances);
    extended.add("max_appearances", report.max_appearances);
    extended.add("appearance_sum", report.appearance_sum);
    extended.add("within_tuple_duplicates", report.within_tuple_duplicates);
    extended.add("duplicate_tuples", report.duplicate_tuples);
    extended.add("unknown_item_count",
                 static_cast<std::int64_t>(report.unknown_item_ids.size()));
    extended.add("balanced", report.balanced() ? "1" : "0");
    write_meta(out, extended);
    out << "histogram,value,count\n";
    std::map<std::int64_t, std::int64_t> appearance_hist;
    for (const auto& [id, count] : report.appearances) ++appearance_hist[count];
    for (const auto& [value, count] : appearance_hist) {
        out << csv_join({"appearances", std::to_string(value), std::to_string(count)}) << "\n";
    }
    for (const auto& [value, count] : report.pair_cooccurrence) {
        out << csv_join({"pair_cooccurrence", std::to_string(value), std::to_string(count)})
            << "\n";
    }
    finish(out, path);
}

}  // namespace bwskit
