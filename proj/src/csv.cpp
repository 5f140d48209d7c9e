#include "bwskit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bwskit {

bool CsvFile::has_meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return true;
    }
    return false;
}

std::string CsvFile::meta(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return fallback;
}

namespace {

// Splits one physical-or-logical record starting at position `pos`. Quoted
// fields may span lines, so the cursor advances past any newlines consumed.
struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool done() const { return pos >= text.size(); }
};

std::vector<std::string> parse_record(Cursor& cur, const std::string& path) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    const std::size_t start_line = cur.line;

    while (true) {
        if (cur.done()) {
            if (in_quotes) {
                throw ParseError(path, start_line, "unterminated quoted field");
            }
            fields.push_back(std::move(field));
            return fields;
        }
        const char c = cur.text[cur.pos];
        if (in_quotes) {
            if (c == '"') {
                if (cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '"') {
                    field.push_back('"');
                    cur.pos += 2;
                } else {
                    in_quotes = false;
                    ++cur.pos;
                }
            } else {
                if (c == '\n') ++cur.line;
                field.push_back(c);
                ++cur.pos;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty()) {
                    throw ParseError(path, cur.line, "quote inside unquoted field");
                }
                in_quotes = true;
                ++cur.pos;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                ++cur.pos;
                break;
            case '\r':
                // Tolerate CRLF input; lone CR inside a field is not supported.
                ++cur.pos;
                break;
            case '\n':
                ++cur.pos;
                ++cur.line;
                fields.push_back(std::move(field));
                return fields;
            default:
                field.push_back(c);
                ++cur.pos;
        }
    }
}

void skip_blank_lines(Cursor& cur) {
    while (!cur.done()) {
        if (cur.text[cur.pos] == '\n') {
            ++cur.pos;
            ++cur.line;
        } else if (cur.text[cur.pos] == '\r') {
            ++cur.pos;
        } else {
            return;
        }
    }
}

std::pair<std::string, std::string> parse_comment(const std::string& line) {
    // "# key: value"; lines without a colon become ("", text).
    std::size_t begin = 1;
    while (begin < line.size() && line[begin] == ' ') ++begin;
    const std::size_t colon = line.find(": ", begin);
    if (colon == std::string::npos) {
        return {"", line.substr(begin)};
    }
    return {line.substr(begin, colon - begin), line.substr(colon + 2)};
}

}  // namespace

CsvFile parse_csv(const std::string& text, const std::string& path) {
    CsvFile out;
    Cursor cur{text};

    // Leading metadata comments.
    skip_blank_lines(cur);
    while (!cur.done() && cur.text[cur.pos] == '#') {
        std::size_t end = cur.text.find('\n', cur.pos);
        if (end == std::string::npos) end = cur.text.size();
        std::string line = cur.text.substr(cur.pos, end - cur.pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.metadata.push_back(parse_comment(line));
        cur.pos = end < cur.text.size() ? end + 1 : end;
        ++cur.line;
        skip_blank_lines(cur);
    }

    if (cur.done()) {
        throw ParseError(path, cur.line, "missing header row");
    }
    out.header_line = cur.line;
    out.header = parse_record(cur, path);

    std::size_t row = 0;
    while (true) {
        skip_blank_lines(cur);
        if (cur.done()) break;
        CsvRecord rec;
        rec.line = cur.line;
        rec.row = ++row;
        rec.fields = parse_record(cur, path);
        if (rec.fields.size() != out.header.size()) {
            throw ParseError(path, rec.line,
                             "expected " + std::to_string(out.header.size()) + " fields, got " +
                                 std::to_string(rec.fields.size()));
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += csv_escape(fields[i]);
    }
    return out;
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

}  // namespace bwskit
