#include "kappa/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "kappa/errors.hpp"

namespace kappa {

namespace {

struct RawCell {
    std::string text;
    std::size_t line = 0;  // 1-based line where the cell starts
};

// Tokenizes the whole stream; quoted cells may span lines.
std::vector<std::vector<RawCell>> tokenize(std::istream& in, char delimiter,
                                           const std::string& source) {
    std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<std::vector<RawCell>> rows;
    std::vector<RawCell> row;
    RawCell cell;
    std::size_t line = 1;
    cell.line = line;
    bool quoted = false;
    bool rowHasContent = false;

    auto endCell = [&]() {
        row.push_back(cell);
        cell = RawCell{};
        cell.line = line;
    };
    auto endRow = [&]() {
        endCell();
        rows.push_back(row);
        row.clear();
        rowHasContent = false;
        cell.line = line;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    cell.text.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.text.push_back(c);
            }
            continue;
        }
        if (c == '"' && cell.text.empty()) {
            quoted = true;
            rowHasContent = true;
        } else if (c == delimiter) {
            endCell();
            rowHasContent = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') ++i;
            if (rowHasContent || !cell.text.empty()) endRow();
            ++line;
            cell.line = line;
        } else {
            cell.text.push_back(c);
            rowHasContent = true;
        }
    }
    if (quoted) throw InputError(source + ": unterminated quoted field");
    if (rowHasContent || !cell.text.empty()) endRow();
    return rows;
}

bool is_na(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return t.empty() || t == "na" || t == "nan" || t == "null";
}

bool parse_number(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e && b != e;
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& source, const CsvOptions& options) {
    std::vector<std::vector<RawCell>> rows = tokenize(in, options.delimiter, source);
    if (rows.empty()) throw InputError(source + ": empty input");

    Dataset d;
    d.source = source;
    std::size_t p = rows[0].size();
    std::size_t firstData = 0;

    if (options.hasHeader) {
        std::set<std::string> seen;
        for (const RawCell& cell : rows[0]) {
            if (cell.text.empty()) throw InputError(source + ": empty column name in header");
            if (!seen.insert(cell.text).second) {
                throw InputError(source + ": duplicate column name '" + cell.text + "'");
            }
            d.names.push_back(cell.text);
        }
        firstData = 1;
    } else {
        for (std::size_t j = 0; j < p; ++j) d.names.push_back("col" + std::to_string(j + 1));
    }
    d.columns.assign(p, {});

    for (std::size_t r = firstData; r < rows.size(); ++r) {
        const std::vector<RawCell>& row = rows[r];
        if (row.size() != p) {
            throw InputError(source + ": line " + std::to_string(row[0].line) + ": expected " +
                             std::to_string(p) + " fields, got " + std::to_string(row.size()));
        }
        std::vector<double> values(p);
        bool drop = false;
        for (std::size_t j = 0; j < p; ++j) {
            if (is_na(row[j].text)) {
                if (options.naPolicy == NaPolicy::Reject) {
                    throw InputError(source + ": line " + std::to_string(row[j].line) +
                                     ": missing value in column '" + d.names[j] + "'");
                }
                drop = true;
                break;
            }
            if (!parse_number(row[j].text, values[j])) {
                throw InputError(source + ": line " + std::to_string(row[j].line) +
                                 ": non-numeric cell '" + row[j].text + "' in column '" +
                                 d.names[j] + "'");
            }
        }
        if (drop) continue;
        for (std::size_t j = 0; j < p; ++j) d.columns[j].push_back(values[j]);
    }
    return d;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    return parse_csv(in, path, options);
}

std::size_t column_index(const Dataset& d, const std::string& name) {
    auto it = std::find(d.names.begin(), d.names.end(), name);
    if (it == d.names.end()) {
        std::string available;
        for (std::size_t i = 0; i < d.names.size(); ++i) {
            available += (i ? ", " : "") + d.names[i];
        }
        throw InputError("unknown column '" + name + "' (available: " + available + ")");
    }
    return static_cast<std::size_t>(it - d.names.begin());
}

const ObservationVector& column(const Dataset& d, const std::string& name) {
    return d.columns[column_index(d, name)];
}

}  // namespace kappa
