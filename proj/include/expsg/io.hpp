#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "expsg/matrix.hpp"
#include "expsg/rational.hpp"
#include "expsg/semigroup.hpp"

namespace expsg {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline Json semigroup_to_json(const NumericalSemigroup& s) {
    Json j;
    j["generators"] = s.min_generators();
    j["frobenius"] = s.frobenius();
    j["genus"] = s.genus();
    j["gaps"] = s.gaps();
    return j;
}

// The generator list alone drives parsing; the remaining fields are
// redundant and cross-checked when present.
inline NumericalSemigroup semigroup_from_json(const Json& j) {
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ParseError("semigroup record needs a \"generators\" array");
    std::vector<long> gens = j["generators"].get<std::vector<long>>();
    Subsemigroup s = from_generators(gens);
    if (!s.is_numerical()) throw ParseError("generators must have gcd 1");
    const NumericalSemigroup& core = s.core();
    if (j.contains("frobenius") && j["frobenius"].get<long>() != core.frobenius())
        throw ParseError("frobenius field disagrees with the generator list");
    if (j.contains("genus") && j["genus"].get<long>() != core.genus())
        throw ParseError("genus field disagrees with the generator list");
    if (j.contains("gaps") && j["gaps"].get<std::vector<long>>() != core.gaps())
        throw ParseError("gaps field disagrees with the generator list");
    return core;
}

inline Json matrix_to_json(const RationalMatrix& m) {
    Json j;
    j["dim"] = m.dim();
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.dim(); ++k) row.push_back(rational_to_string(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline RationalMatrix matrix_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("entries")) throw ParseError("matrix record needs dim and entries");
    int d = j["dim"].get<int>();
    if (d < 1) throw ParseError("matrix dimension must be >= 1");
    const Json& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw ParseError("matrix entries must be a dim x dim array");
    RationalMatrix m(d);
    for (int i = 0; i < d; ++i) {
        const Json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw ParseError("matrix entries must be a dim x dim array");
        for (int k = 0; k < d; ++k) {
            const Json& cell = row[static_cast<size_t>(k)];
            if (cell.is_number_integer()) {
                m.at(i, k) = BigRat(BigInt(cell.get<long long>()));
            } else if (cell.is_string()) {
                m.at(i, k) = parse_rational(cell.get<std::string>());
            } else {
                throw ParseError("matrix entries must be fraction strings");
            }
        }
    }
    return m;
}

// A representing-matrix certificate: the semigroup, the matrix, and how
// the matrix was obtained.
struct Certificate {
    NumericalSemigroup semigroup;
    RationalMatrix matrix;
    std::string method;  // cycle | two_by_two | intersection | quotient | cmm | random | data
    Json params = Json::object();
};

inline Json certificate_to_json(const Certificate& c) {
    Json j;
    j["semigroup"] = semigroup_to_json(c.semigroup);
    j["matrix"] = matrix_to_json(c.matrix);
    j["method"] = c.method;
    j["params"] = c.params;
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    Certificate c{semigroup_from_json(j.at("semigroup")), matrix_from_json(j.at("matrix")),
                  j.value("method", "data"), j.value("params", Json::object())};
    return c;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline std::string generators_key(const NumericalSemigroup& s) {
    std::string key;
    for (long g : s.min_generators()) {
        if (!key.empty()) key += "_";
        key += std::to_string(g);
    }
    return key;
}

}  // namespace expsg
