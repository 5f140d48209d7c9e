#pragma once

// Minimal CSV layer for the toolkit's file formats: comma-separated, UTF-8,
// mandatory header row, LF line endings on output. Fields containing commas,
// quotes or newlines are double-quoted with doubled inner quotes. Lines
// starting with '#' before the header row are metadata comments of the form
// "# key: value" and are collected, not parsed as records.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwskit {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::size_t line, const std::string& message)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
          path_(std::move(path)),
          line_(line) {}

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::size_t row = 0;   // 1-based data row index, header excluded
};

struct CsvFile {
    // "# key: value" comment lines found before the header, in file order.
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<CsvRecord> records;
    std::size_t header_line = 0;

    bool has_meta(const std::string& key) const;
    std::string meta(const std::string& key, const std::string& fallback = "") const;
};

// Parses a whole file. Throws ParseError on malformed quoting or missing
// header. Accepts both LF and CRLF input.
CsvFile read_csv(const std::string& path);

// Parses CSV from an in-memory buffer; `path` is used in diagnostics only.
CsvFile parse_csv(const std::string& text, const std::string& path = "<string>");

std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

// Fixed-precision formatting used in all output files (6 decimal places).
std::string format_real(double value);

}  // namespace bwskit
