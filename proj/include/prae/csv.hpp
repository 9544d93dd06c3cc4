#pragma once

#include "prae/dataset.hpp"

#include <stdexcept>
#include <string>

namespace prae {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Comma-separated, '.' decimals, optional header (auto-detected from a
// non-numeric first row). A named label column is parsed as 0/1 and removed
// from the feature matrix; naming a missing column is an error.
LabeledDataset load_csv(const std::string& path, const std::string& label_column = "");

// Like load_csv, but uses the "label" column whenever the header has one.
LabeledDataset load_csv_auto(const std::string& path);

// Columns f0..f{D-1}, plus `label` when labels are present.
void save_csv(const LabeledDataset& data, const std::string& path);

// Headerless numeric matrix.
void save_matrix_csv(const Mat& m, const std::string& path);
Mat load_matrix_csv(const std::string& path);

} // namespace prae
