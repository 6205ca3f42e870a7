#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kappa/scores.hpp"

// CSV ingestion. RFC-4180-style: configurable delimiter, double quotes with
// "" escapes, quoted fields may contain delimiters and newlines. All columns
// are numeric; a cell is NA when empty or spelled na/nan/null (any case).
// naPolicy Reject fails on the first NA or non-numeric cell with its line
// number; DropRow drops the whole row.

namespace kappa {

struct Dataset {
    std::vector<std::string> names;
    std::vector<ObservationVector> columns;
    std::string source;

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
    std::size_t cols() const { return columns.size(); }
};

enum class NaPolicy { Reject, DropRow };

struct CsvOptions {
    char delimiter = ',';
    bool hasHeader = true;
    NaPolicy naPolicy = NaPolicy::Reject;
};

Dataset parse_csv(std::istream& in, const std::string& source, const CsvOptions& options = {});
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

// Throws InputError when the name is unknown; the error lists available names.
const ObservationVector& column(const Dataset& d, const std::string& name);
std::size_t column_index(const Dataset& d, const std::string& name);

}  // namespace kappa
