#pragma once

#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "bwskit/io.hpp"
#include "bwskit/model.hpp"

namespace bwscli {

void register_design_commands(CLI::App& app);
void register_score_commands(CLI::App& app);
void register_reliability_commands(CLI::App& app);
void register_simulate_commands(CLI::App& app);
void register_pipeline_command(CLI::App& app);

// "lo:hi" with integer endpoints, e.g. "-4:4".
bwskit::ScaleConfig parse_scale(const std::string& text);

// Tuple-count expressions: a plain integer, or a multiple of the item count
// such as "2N" or "1.5N". The result must come out integral.
std::int64_t resolve_m(const std::string& expr, std::size_t item_count);

// Comma-separated integer list, e.g. "1,2,3,5,10".
std::vector<std::int64_t> parse_int_list(const std::string& text);

// Items i<k> for k = 1..count, zero-padded, with text equal to the id.
bwskit::ItemSet synthetic_items(std::int64_t count);

// Metadata stub every output file starts from: tool version and subcommand.
bwskit::Metadata base_meta(const std::string& subcommand);

}  // namespace bwscli
