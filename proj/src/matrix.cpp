#include "taxvec/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

constexpr const char* kHeader = "%%MatrixMarket matrix coordinate real general";

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void write_matrix_market(const FeatureMatrix& matrix, std::ostream& out) {
    out << kHeader << '\n';
    out << matrix.n_rows << ' ' << matrix.columns.size() << ' ' << matrix.entries.size() << '\n';
    for (const MatrixEntry& e : matrix.entries) {
        out << e.row + 1 << ' ' << e.col + 1 << ' ' << format_double(e.value) << '\n';
    }
}

void write_matrix_sidecar(const FeatureMatrix& matrix, std::ostream& out) {
    nlohmann::json j;
    j["columns"] = matrix.columns;
    std::vector<std::size_t> rows(matrix.n_rows);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    j["rows"] = rows;
    out << j.dump(2) << '\n';
}

FeatureMatrix read_matrix(std::istream& market, std::istream& sidecar) {
    std::string line;
    if (!std::getline(market, line)) throw Error("matrix stream is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw Error("unsupported matrix header \"" + line + "\"");

    FeatureMatrix m;
    std::size_t n_cols = 0, nnz = 0;
    bool have_dims = false;
    std::size_t read_entries = 0;
    std::size_t line_no = 1;
    while (std::getline(market, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        std::istringstream fields(line);
        if (!have_dims) {
            if (!(fields >> m.n_rows >> n_cols >> nnz)) {
                throw Error("matrix line " + std::to_string(line_no) + ": bad size line");
            }
            have_dims = true;
            continue;
        }
        std::size_t row = 0, col = 0;
        double value = 0.0;
        if (!(fields >> row >> col >> value)) {
            throw Error("matrix line " + std::to_string(line_no) + ": bad entry");
        }
        if (row < 1 || row > m.n_rows || col < 1 || col > n_cols) {
            throw Error("matrix line " + std::to_string(line_no) + ": index out of range");
        }
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error("matrix line " + std::to_string(line_no) + ": values must be finite and positive");
        }
        m.entries.push_back({row - 1, col - 1, value});
        ++read_entries;
    }
    if (!have_dims) throw Error("matrix stream has no size line");
    if (read_entries != nnz) {
        throw Error("matrix declares " + std::to_string(nnz) + " entries but contains " +
                    std::to_string(read_entries));
    }
    std::sort(m.entries.begin(), m.entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 1; i < m.entries.size(); ++i) {
        if (m.entries[i].row == m.entries[i - 1].row && m.entries[i].col == m.entries[i - 1].col) {
            throw Error("matrix has a duplicate entry at row " + std::to_string(m.entries[i].row + 1) +
                        ", column " + std::to_string(m.entries[i].col + 1));
        }
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(sidecar);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed matrix sidecar: ") + e.what());
    }
    if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array()) {
        throw Error("matrix sidecar lacks a \"columns\" array");
    }
    m.columns = j["columns"].get<std::vector<std::string>>();
    if (m.columns.size() != n_cols) {
        throw Error("matrix sidecar names " + std::to_string(m.columns.size()) + " columns, matrix has " +
                    std::to_string(n_cols));
    }
    std::set<std::string> unique(m.columns.begin(), m.columns.end());
    if (unique.size() != m.columns.size()) throw Error("matrix sidecar has duplicate column ids");
    if (j.contains("rows") && j["rows"].is_array() && j["rows"].size() != m.n_rows) {
        throw Error("matrix sidecar names " + std::to_string(j["rows"].size()) + " rows, matrix has " +
                    std::to_string(m.n_rows));
    }
    return m;
}

FeatureMatrix concat(const FeatureMatrix& semantic, const FeatureMatrix& external) {
    if (external.columns.empty()) return semantic;
    if (semantic.columns.empty()) return external;
    if (semantic.n_rows != external.n_rows) {
        throw Error("cannot concatenate matrices with " + std::to_string(external.n_rows) + " and " +
                    std::to_string(semantic.n_rows) + " rows");
    }

    FeatureMatrix out;
    out.n_rows = semantic.n_rows;
    out.columns.reserve(external.columns.size() + semantic.columns.size());
    for (const std::string& id : external.columns) out.columns.push_back("ext:" + id);
    for (const std::string& id : semantic.columns) out.columns.push_back("sem:" + id);

    const std::size_t shift = external.columns.size();
    out.entries.reserve(external.entries.size() + semantic.entries.size());
    for (const MatrixEntry& e : external.entries) out.entries.push_back(e);
    for (const MatrixEntry& e : semantic.entries) out.entries.push_back({e.row, e.col + shift, e.value});
    std::sort(out.entries.begin(), out.entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

}  // namespace taxvec
