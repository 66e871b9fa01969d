#include "qsand/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qsand {

namespace {

using nlohmann::json;

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            dims.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("bad dimension list '" + text + "'");
        }
    }
    if (dims.empty()) throw ParseError("empty dimension list");
    return dims;
}

bool is_state_fixture_name(const std::string& name) {
    return name == "ghz" || name == "bell" || name == "product";
}

bool is_channel_fixture_name(const std::string& name) {
    return name == "dephasing" || name == "identity";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

ComplexMatrix ghz_matrix(const std::vector<int>& dims) {
    if (dims.size() < 2) throw ParseError("ghz fixture needs at least two factors");
    const int q = dims.front();
    for (int d : dims) {
        if (d != q) throw ParseError("ghz fixture needs equal factor dimensions");
    }
    const SystemLayout layout = SystemLayout::of_dims(dims);
    const int total = layout.total_dim();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(total);
    // |i i ... i> has global index i * (q^{n-1} + ... + q + 1).
    Eigen::Index repunit = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) repunit = repunit * q + 1;
    for (int i = 0; i < q; ++i) psi[i * repunit] = 1.0 / std::sqrt(static_cast<double>(q));
    return psi * psi.adjoint();
}

} // namespace

DensityMatrix fixture_state(const std::string& name, const std::vector<int>& dims) {
    if (name == "bell") {
        if (!dims.empty() && dims != std::vector<int>{2, 2}) {
            throw ParseError("bell fixture is fixed at dims 2,2");
        }
        return DensityMatrix(ghz_matrix({2, 2}), SystemLayout::of_dims({2, 2}));
    }
    if (name == "ghz") {
        const std::vector<int> use = dims.empty() ? std::vector<int>{2, 2, 2} : dims;
        return DensityMatrix(ghz_matrix(use), SystemLayout::of_dims(use));
    }
    if (name == "product") {
        // Product of diagonal states with spectrum proportional to 1..d.
        const std::vector<int> use = dims.empty() ? std::vector<int>{2, 2, 2} : dims;
        ComplexMatrix m = ComplexMatrix::Ones(1, 1);
        for (int d : use) {
            if (d < 1) throw ParseError("product fixture needs dims >= 1");
            Eigen::VectorXd diag(d);
            for (int i = 0; i < d; ++i) diag[i] = static_cast<double>(i + 1);
            diag /= diag.sum();
            m = kron(m, ComplexMatrix(diag.cast<Complex>().asDiagonal()));
        }
        return DensityMatrix(std::move(m), SystemLayout::of_dims(use));
    }
    throw ParseError("unknown state fixture '" + name + "'");
}

KrausSet fixture_channel(const std::string& name, int d, const std::string& acting_on) {
    if (d < 1) throw ParseError("channel fixture needs d >= 1");
    KrausSet ks;
    ks.acting_on = acting_on;
    if (name == "identity") {
        ks.operators.push_back(ComplexMatrix::Identity(d, d));
        return ks;
    }
    if (name == "dephasing") {
        for (int i = 0; i < d; ++i) {
            ComplexMatrix k = ComplexMatrix::Zero(d, d);
            k(i, i) = 1.0;
            ks.operators.push_back(std::move(k));
        }
        return ks;
    }
    throw ParseError("unknown channel fixture '" + name + "'");
}

ComplexMatrix matrix_from_json(const json& grid, const std::string& where) {
    if (!grid.is_array() || grid.empty()) {
        throw ParseError(where + ": matrix must be a nonempty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(grid.size());
    const auto cols = static_cast<Eigen::Index>(grid.front().is_array() ? grid.front().size() : 0);
    if (cols == 0) throw ParseError(where + ": matrix rows must be nonempty arrays");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = grid[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ParseError(where + ": ragged matrix rows");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            const auto& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw ParseError(where + ": entries must be [re, im] pairs");
            }
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    json grid = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

DensityMatrix load_state(const std::string& spec) {
    // Fixture shorthand: "ghz" or "ghz:2,2,2".
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    if (is_state_fixture_name(head)) {
        std::vector<int> dims;
        if (colon != std::string::npos) dims = parse_dims(spec.substr(colon + 1));
        return fixture_state(head, dims);
    }

    const json j = read_json_file(spec);
    if (j.contains("fixture")) {
        std::vector<int> dims;
        if (j.contains("dims")) dims = j["dims"].get<std::vector<int>>();
        return fixture_state(j["fixture"].get<std::string>(), dims);
    }
    if (!j.contains("layout") || !j.contains("matrix")) {
        throw ParseError("'" + spec + "': state file needs 'layout' and 'matrix'");
    }
    std::vector<Factor> factors;
    for (const auto& f : j["layout"]) {
        if (!f.is_array() || f.size() != 2) {
            throw ParseError("'" + spec + "': layout entries must be [label, dim]");
        }
        factors.push_back({f[0].get<std::string>(), f[1].get<int>()});
    }
    try {
        return DensityMatrix(matrix_from_json(j["matrix"], spec), SystemLayout(std::move(factors)));
    } catch (const std::invalid_argument& e) {
        throw ParseError("'" + spec + "': " + e.what());
    }
}

KrausSet load_channel(const std::string& spec) {
    // Fixture shorthand: "dephasing", "dephasing:3", "dephasing:2@B".
    std::string body = spec;
    std::string acting_on;
    const auto at = spec.find('@');
    if (at != std::string::npos) {
        body = spec.substr(0, at);
        acting_on = spec.substr(at + 1);
    }
    const auto colon = body.find(':');
    const std::string head = body.substr(0, colon);
    if (is_channel_fixture_name(head)) {
        int d = 2;
        if (colon != std::string::npos) {
            const auto dims = parse_dims(body.substr(colon + 1));
            if (dims.size() != 1) throw ParseError("channel fixture takes a single dimension");
            d = dims[0];
        }
        return fixture_channel(head, d, acting_on);
    }

    const json j = read_json_file(spec);
    KrausSet ks;
    if (j.contains("acting_on")) ks.acting_on = j["acting_on"].get<std::string>();
    if (j.contains("fixture")) {
        const int d = j.value("d", 2);
        return fixture_channel(j["fixture"].get<std::string>(), d, ks.acting_on);
    }
    if (!j.contains("d") || !j.contains("m") || !j.contains("operators")) {
        throw ParseError("'" + spec + "': channel file needs 'd', 'm' and 'operators'");
    }
    const int d = j["d"].get<int>();
    const int m = j["m"].get<int>();
    const auto& ops = j["operators"];
    if (!ops.is_array() || static_cast<int>(ops.size()) != m) {
        throw ParseError("'" + spec + "': expected " + std::to_string(m) + " operators");
    }
    for (const auto& grid : ops) {
        ComplexMatrix k = matrix_from_json(grid, spec);
        if (k.rows() != d || k.cols() != d) {
            throw ParseError("'" + spec + "': operators must be " + std::to_string(d) + "x" +
                             std::to_string(d));
        }
        ks.operators.push_back(std::move(k));
    }
    const auto report = validate_kraus(ks);
    if (!report.pass) {
        throw ParseError("'" + spec + "': Kraus completeness deviation " +
                         format_value(report.max_deviation) + " exceeds " +
                         format_value(tol::kraus) + "; refusing the channel");
    }
    return ks;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace qsand
