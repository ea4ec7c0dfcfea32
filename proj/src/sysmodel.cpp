#include "geosub/sysmodel.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <random>
#include <string>

namespace geosub {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_to_rows(const Matrix& M) {
    ordered_json rows = ordered_json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Index read_dimension(const nlohmann::json& j, const char* field) {
    if (!j.at(field).is_number_integer()) {
        throw ParseError(std::string("field \"") + field + "\" must be an integer");
    }
    const auto value = j.at(field).get<long long>();
    if (value < 1) {
        throw ParseError(std::string("field \"") + field + "\" must be >= 1");
    }
    return static_cast<Index>(value);
}

Matrix read_matrix(const nlohmann::json& j, const char* field, Index rows, Index cols) {
    const auto& arr = j.at(field);
    if (!arr.is_array()) {
        throw ParseError(std::string("field \"") + field + "\" must be an array of rows");
    }
    if (static_cast<Index>(arr.size()) != rows) {
        throw ShapeMismatch(std::string("field \"") + field + "\" must have " +
                            std::to_string(rows) + " rows, got " + std::to_string(arr.size()));
    }
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = arr.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ShapeMismatch(std::string("field \"") + field + "\" row " + std::to_string(i) +
                                " must have " + std::to_string(cols) + " entries");
        }
        for (Index k = 0; k < cols; ++k) {
            const auto& cell = row.at(static_cast<std::size_t>(k));
            if (!cell.is_number()) {
                throw ParseError(std::string("field \"") + field + "\" entry (" +
                                 std::to_string(i) + "," + std::to_string(k) +
                                 ") is not a number");
            }
            M(i, k) = cell.get<double>();
        }
    }
    return M;
}

}  // namespace

void validate(const StateSpaceSystem& sys) {
    const Index n = sys.A.rows();
    const Index m = sys.B.cols();
    const Index p = sys.C.rows();
    if (n < 1 || sys.A.cols() != n) {
        throw ShapeMismatch("A must be square with n >= 1");
    }
    if (m < 1 || sys.B.rows() != n) {
        throw ShapeMismatch("B must be n x m with m >= 1");
    }
    if (p < 1 || sys.C.cols() != n) {
        throw ShapeMismatch("C must be p x n with p >= 1");
    }
    if (sys.D.rows() != p || sys.D.cols() != m) {
        throw ShapeMismatch("D must be p x m");
    }
    const std::array<std::pair<const Matrix*, const char*>, 4> mats = {
        {{&sys.A, "A"}, {&sys.B, "B"}, {&sys.C, "C"}, {&sys.D, "D"}}};
    for (const auto& [M, name] : mats) {
        if (!M->allFinite()) {
            throw NonFiniteEntry(std::string("matrix ") + name + " has a NaN or Inf entry");
        }
    }
}

StateSpaceSystem random_system(Index n, Index m, Index p, std::uint64_t seed,
                               std::pair<int, int> entry_range) {
    if (n < 1 || m < 1 || p < 1) {
        throw ShapeMismatch("random_system dimensions must be >= 1");
    }
    if (entry_range.second < entry_range.first) {
        throw InvalidOrder("entry_range must satisfy lo <= hi");
    }
    std::mt19937_64 rng(seed);
    // Modulo mapping instead of uniform_int_distribution: the output must be
    // identical across standard library implementations.
    const auto span =
        static_cast<std::uint64_t>(static_cast<long long>(entry_range.second) -
                                   static_cast<long long>(entry_range.first)) + 1;
    auto fill = [&](Index rows, Index cols) {
        Matrix M(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < cols; ++j) {
                M(i, j) = static_cast<double>(entry_range.first +
                                              static_cast<long long>(rng() % span));
            }
        }
        return M;
    };
    StateSpaceSystem sys;
    sys.A = fill(n, n);
    sys.B = fill(n, m);
    sys.C = fill(p, n);
    sys.D = fill(p, m);
    return sys;
}

StateSpaceSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open \"" + path + "\" for reading");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("top-level JSON value must be an object");
    }
    static const std::array<const char*, 7> known = {"n", "m", "p", "A", "B", "C", "D"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("unknown field \"" + key + "\"");
    }
    for (const char* k : known) {
        if (!j.contains(k)) throw ParseError(std::string("missing field \"") + k + "\"");
    }
    const Index n = read_dimension(j, "n");
    const Index m = read_dimension(j, "m");
    const Index p = read_dimension(j, "p");
    StateSpaceSystem sys;
    sys.A = read_matrix(j, "A", n, n);
    sys.B = read_matrix(j, "B", n, m);
    sys.C = read_matrix(j, "C", p, n);
    sys.D = read_matrix(j, "D", p, m);
    validate(sys);
    return sys;
}

void save_system(const StateSpaceSystem& sys, const std::string& path) {
    validate(sys);
    ordered_json j;
    j["n"] = sys.n();
    j["m"] = sys.m();
    j["p"] = sys.p();
    j["A"] = matrix_to_rows(sys.A);
    j["B"] = matrix_to_rows(sys.B);
    j["C"] = matrix_to_rows(sys.C);
    j["D"] = matrix_to_rows(sys.D);
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open \"" + path + "\" for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error("write to \"" + path + "\" failed");
    }
}

}  // namespace geosub
