#include "penreg/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "penreg/errors.hpp"

namespace penreg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos
                             ? std::string{}
                             : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_cell(const std::string& cell, std::size_t row,
                  const std::string& label) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw DataError("non-numeric cell in column '" + label + "' row " +
                        std::to_string(row));
    }
    if (pos != cell.size() || !std::isfinite(v))
        throw DataError("non-numeric cell in column '" + label + "' row " +
                        std::to_string(row));
    return v;
}

void check_dataset(const Dataset& d) {
    if (d.p() < 2)
        throw DataError("dataset needs at least one regressor besides the intercept");
    if (d.n() <= d.p())
        throw DataError("dataset has too few rows: n=" + std::to_string(d.n()) +
                        " <= p=" + std::to_string(d.p()));
    std::set<std::string> seen(d.names.begin(), d.names.end());
    if (seen.size() != d.names.size())
        throw DataError("duplicate column labels");
    for (double v : d.y)
        if (!std::isfinite(v)) throw DataError("non-finite value in dependent column");
    for (double v : d.X.data())
        if (!std::isfinite(v)) throw DataError("non-finite value in regressor matrix");
    for (std::size_t j = 1; j < d.p(); ++j) {
        const Vector col = d.X.column(j);
        const double mu = vec_mean(col);
        double ss = 0.0;
        for (double v : col) ss += (v - mu) * (v - mu);
        if (ss <= 0.0)
            throw DataError("constant regressor column '" + d.names[j] + "'");
    }
}

} // namespace

Dataset make_dataset(const Vector& y, const Matrix& regressors,
                     const std::vector<std::string>& names,
                     const std::string& dependent) {
    if (regressors.rows() != y.size())
        throw DataError("regressor rows do not match dependent length");
    if (names.size() != regressors.cols())
        throw DataError("label count does not match regressor count");

    Dataset d;
    d.y = y;
    d.dependent = dependent;
    d.X = Matrix(y.size(), regressors.cols() + 1);
    d.names.reserve(regressors.cols() + 1);
    d.names.push_back("intercept");
    for (std::size_t i = 0; i < y.size(); ++i) d.X(i, 0) = 1.0;
    for (std::size_t j = 0; j < regressors.cols(); ++j) {
        d.names.push_back(names[j]);
        for (std::size_t i = 0; i < y.size(); ++i)
            d.X(i, j + 1) = regressors(i, j);
    }
    check_dataset(d);
    return d;
}

Dataset load_dataset(const std::string& path, const std::string& dependent) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty dataset file: " + path);
    if (!line.empty() && line.front() == '\xEF' && line.size() >= 3 &&
        line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);

    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2)
        throw DataError("dataset needs a dependent column and at least one regressor");

    std::size_t dep_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == dependent) dep_idx = j;
    if (dep_idx == header.size())
        throw DataError("dependent column '" + dependent + "' not found");

    std::vector<std::vector<double>> cols(header.size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++row;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError("row " + std::to_string(row) + " has " +
                            std::to_string(fields.size()) + " cells, expected " +
                            std::to_string(header.size()));
        for (std::size_t j = 0; j < fields.size(); ++j)
            cols[j].push_back(parse_cell(fields[j], row, header[j]));
    }
    if (row == 0) throw DataError("dataset has no data rows: " + path);

    Matrix regressors(row, header.size() - 1);
    std::vector<std::string> names;
    std::size_t out = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j == dep_idx) continue;
        names.push_back(header[j]);
        for (std::size_t i = 0; i < row; ++i) regressors(i, out) = cols[j][i];
        ++out;
    }
    return make_dataset(cols[dep_idx], regressors, names, dependent);
}

Matrix transform_columns(const Matrix& X, TransformMode mode,
                         bool skip_intercept) {
    Matrix T = X;
    const std::size_t n = X.rows();
    const std::size_t start = skip_intercept ? 1 : 0;
    for (std::size_t j = start; j < X.cols(); ++j) {
        Vector col = X.column(j);
        if (mode == TransformMode::center || mode == TransformMode::standardize) {
            const double mu = vec_mean(col);
            for (double& v : col) v -= mu;
        }
        if (mode == TransformMode::standardize ||
            mode == TransformMode::unit_length) {
            double ss = 0.0;
            for (double v : col) ss += v * v;
            if (ss <= 0.0)
                throw InvalidArgument("degenerate column " + std::to_string(j) +
                                      " under transform " + to_string(mode));
            const double inv = 1.0 / std::sqrt(ss);
            for (double& v : col) v *= inv;
        }
        for (std::size_t i = 0; i < n; ++i) T(i, j) = col[i];
    }
    return T;
}

TransformMode transform_mode_from_string(const std::string& name) {
    if (name == "center") return TransformMode::center;
    if (name == "standardize") return TransformMode::standardize;
    if (name == "unit-length" || name == "unit_length")
        return TransformMode::unit_length;
    throw InvalidArgument("unknown transform mode: " + name);
}

std::string to_string(TransformMode mode) {
    switch (mode) {
        case TransformMode::center: return "center";
        case TransformMode::standardize: return "standardize";
        case TransformMode::unit_length: return "unit-length";
    }
    return "unknown";
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for hashing: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace penreg
