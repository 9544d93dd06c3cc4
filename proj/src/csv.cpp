#include "prae/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace prae {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        std::size_t b = cell.find_first_not_of(" \t\r");
        std::size_t e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

struct RawCsv {
    std::vector<std::string> header; // empty when the file has none
    std::vector<std::vector<std::string>> rows;
};

RawCsv read_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    RawCsv raw;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (first) {
            first = false;
            bool numeric = true;
            double tmp;
            for (const std::string& c : cells)
                if (!parse_double(c, tmp)) numeric = false;
            if (!numeric) {
                raw.header = cells;
                continue;
            }
        }
        raw.rows.push_back(cells);
    }
    if (raw.rows.empty()) throw ParseError(path + ": no data rows");
    return raw;
}

} // namespace

LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    RawCsv raw = read_raw(path);
    const std::size_t width = raw.header.empty() ? raw.rows.front().size() : raw.header.size();

    std::vector<std::string> names(width);
    for (std::size_t j = 0; j < width; ++j)
        names[j] = raw.header.empty() ? "f" + std::to_string(j) : raw.header[j];

    int label_idx = -1;
    if (!label_column.empty()) {
        for (std::size_t j = 0; j < width; ++j)
            if (names[j] == label_column) label_idx = static_cast<int>(j);
        if (label_idx < 0) throw ParseError(path + ": label column '" + label_column + "' not found");
    }

    LabeledDataset data;
    const int n = static_cast<int>(raw.rows.size());
    const int d = static_cast<int>(width) - (label_idx >= 0 ? 1 : 0);
    data.x.assign(n, d);
    if (label_idx >= 0) {
        data.labels.assign(n, 0);
        data.has_labels = true;
    }
    data.meta = "csv " + path;

    for (int i = 0; i < n; ++i) {
        const std::vector<std::string>& cells = raw.rows[i];
        if (cells.size() != width)
            throw ParseError(path + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " + std::to_string(width));
        int col = 0;
        for (std::size_t j = 0; j < width; ++j) {
            double v;
            if (!parse_double(cells[j], v))
                throw ParseError(path + ": row " + std::to_string(i + 1) + ", column " + names[j] +
                                 ": cannot parse '" + cells[j] + "'");
            if (static_cast<int>(j) == label_idx) {
                if (v != 0.0 && v != 1.0)
                    throw ParseError(path + ": row " + std::to_string(i + 1) + ", column " + names[j] +
                                     ": label must be 0 or 1");
                data.labels[i] = v == 1.0 ? 1 : 0;
            } else {
                data.x(i, col++) = v;
            }
        }
    }
    return data;
}

LabeledDataset load_csv_auto(const std::string& path) {
    RawCsv raw = read_raw(path);
    for (const std::string& name : raw.header)
        if (name == "label") return load_csv(path, "label");
    return load_csv(path);
}

void save_csv(const LabeledDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (int j = 0; j < data.dim(); ++j) {
        if (j) out << ',';
        out << 'f' << j;
    }
    if (data.has_labels) out << ",label";
    out << '\n';
    for (int i = 0; i < data.n(); ++i) {
        for (int j = 0; j < data.dim(); ++j) {
            if (j) out << ',';
            out << format_double(data.x(i, j));
        }
        if (data.has_labels) out << ',' << (data.labels[i] ? 1 : 0);
        out << '\n';
    }
}

void save_matrix_csv(const Mat& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Mat load_matrix_csv(const std::string& path) { return load_csv(path).x; }

} // namespace prae
