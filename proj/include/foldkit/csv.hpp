#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/errors.hpp"

namespace foldkit {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// RFC-4180-style reader: quoted fields, doubled quotes as escapes, CRLF or
// LF line endings, UTF-8 passed through. The header row is mandatory.
inline CsvTable read_csv(std::istream& in, const std::string& origin = "<csv>") {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool any_char = false;
    std::size_t line = 1, column = 0;

    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&]() {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            if (record.size() != table.header.size())
                throw ParseError(origin + ": row has " + std::to_string(record.size()) +
                                     " fields, header has " + std::to_string(table.header.size()),
                                 line, 1);
            table.rows.push_back(std::move(record));
        }
        record = {};
    };

    char c;
    while (in.get(c)) {
        ++column;
        any_char = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    ++column;
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
                if (c == '\n') {
                    ++line;
                    column = 0;
                }
            }
        } else if (c == '"') {
            if (!field.empty())
                throw ParseError(origin + ": quote inside unquoted field", line, column);
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; the '\n' that follows ends the record
        } else if (c == '\n') {
            end_record();
            ++line;
            column = 0;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) throw ParseError(origin + ": unterminated quoted field", line, column);
    if (!field.empty() || !record.empty() || (any_char && field_was_quoted)) end_record();

    if (table.header.empty()) throw ParseError(origin + ": missing header row");
    return table;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path);
    return read_csv(in, path);
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

}  // namespace foldkit
