#include "solvlie/json_io.hpp"

#include <map>

#include "json.hpp"
#include "solvlie/derivations.hpp"
#include "solvlie/errors.hpp"

namespace solvlie {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::string string_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Rat rat_field(const json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": rationals must be \"p/q\" strings");
    try {
        return Rat::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_string(const std::string& s) {
    try {
        return Rat::parse(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

LieAlgebra<Rat> parse_algebra(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object()) throw ParseError("algebra document must be a JSON object");

    std::string name = string_field(j, "name");
    const json& dim_v = field(j, "dim");
    if (!dim_v.is_number_integer() || dim_v.get<long>() < 0)
        throw ParseError("'dim' must be a non-negative integer");
    std::size_t n = dim_v.get<std::size_t>();

    const json& basis_v = field(j, "basis");
    if (!basis_v.is_array() || basis_v.size() != n)
        throw ParseError("'basis' must list exactly dim names");
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (const auto& b : basis_v) {
        if (!b.is_string()) throw ParseError("basis names must be strings");
        std::string s = b.get<std::string>();
        if (!index.emplace(s, names.size()).second)
            throw ParseError("duplicate basis name '" + s + "'");
        names.push_back(std::move(s));
    }

    std::vector<Vec<Rat>> upper(n * (n - 1) / 2, vecops::zero<Rat>(n));
    const json& brackets = field(j, "brackets");
    if (!brackets.is_array()) throw ParseError("'brackets' must be an array");
    for (const auto& entry : brackets) {
        if (!entry.is_object()) throw ParseError("bracket entries must be objects");
        std::string xs = string_field(entry, "x");
        std::string ys = string_field(entry, "y");
        auto xi = index.find(xs), yi = index.find(ys);
        if (xi == index.end()) throw ParseError("unknown basis name '" + xs + "'");
        if (yi == index.end()) throw ParseError("unknown basis name '" + ys + "'");
        if (xi->second == yi->second)
            throw ParseError("bracket [" + xs + ", " + xs + "] is identically zero");
        const json& value = field(entry, "value");
        if (!value.is_object()) throw ParseError("bracket 'value' must be a name-to-rational map");
        Vec<Rat> v = vecops::zero<Rat>(n);
        for (const auto& [key, cv] : value.items()) {
            auto ki = index.find(key);
            if (ki == index.end()) throw ParseError("unknown basis name '" + key + "'");
            v[ki->second] = rat_field(cv, "bracket [" + xs + ", " + ys + "]");
        }
        std::size_t i = xi->second, k = yi->second;
        if (i > k) {
            std::swap(i, k);
            for (auto& c : v) c = -c;
        }
        std::size_t pos = i * n - i * (i + 1) / 2 + (k - i - 1);
        upper[pos] = std::move(v);
    }

    LieAlgebra<Rat> alg(std::move(name), std::move(names), std::move(upper));

    if (auto it = j.find("declared_nilradical"); it != j.end()) {
        if (!it->is_array()) throw ParseError("'declared_nilradical' must be an array of vectors");
        std::vector<Vec<Rat>> decl;
        for (const auto& row : *it) {
            if (!row.is_array() || row.size() != n)
                throw ParseError("declared_nilradical vectors must have dim entries");
            Vec<Rat> v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = rat_field(row[c], "declared_nilradical");
            decl.push_back(std::move(v));
        }
        alg.set_declared_nilradical(std::move(decl));
    }
    return alg;
}

std::string serialize_algebra(const LieAlgebra<Rat>& alg) {
    std::size_t n = alg.dim();
    json j;
    j["name"] = alg.name();
    j["dim"] = n;
    j["basis"] = alg.basis_names();
    json brackets = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const Vec<Rat>& v = alg.bracket_upper(i, k);
            if (vecops::is_zero(v)) continue;
            json value = json::object();
            for (std::size_t c = 0; c < n; ++c)
                if (!v[c].is_zero()) value[alg.basis_names()[c]] = v[c].str();
            brackets.push_back(
                {{"x", alg.basis_names()[i]}, {"y", alg.basis_names()[k]}, {"value", value}});
        }
    }
    j["brackets"] = std::move(brackets);
    if (const auto& decl = alg.declared_nilradical()) {
        json rows = json::array();
        for (const auto& v : *decl) {
            json row = json::array();
            for (const auto& c : v) row.push_back(c.str());
            rows.push_back(std::move(row));
        }
        j["declared_nilradical"] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

Matrix<Rat> parse_metric(const std::string& text, const LieAlgebra<Rat>& alg) {
    json j = parse_text(text);
    if (!j.is_object()) throw ParseError("metric document must be a JSON object");
    std::string ref = string_field(j, "algebra");
    if (ref != alg.name())
        throw ParseError("metric references algebra '" + ref + "', expected '" + alg.name() + "'");
    const json& gram_v = field(j, "gram");
    std::size_t n = alg.dim();
    if (!gram_v.is_array() || gram_v.size() != n)
        throw ParseError("'gram' must be a dim x dim grid");
    Matrix<Rat> gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = gram_v[i];
        if (!row.is_array() || row.size() != n) throw ParseError("'gram' must be a dim x dim grid");
        for (std::size_t k = 0; k < n; ++k) gram(i, k) = rat_field(row[k], "gram entry");
    }
    if (gram != gram.transposed()) throw ParseError("'gram' must be symmetric");
    if (!is_positive_definite(gram)) throw NotPositiveDefinite("metric gram matrix");
    return gram;
}

std::string serialize_metric(const LieAlgebra<Rat>& alg, const Matrix<Rat>& gram) {
    json rows = json::array();
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < gram.cols(); ++k) row.push_back(gram(i, k).str());
        rows.push_back(std::move(row));
    }
    json j;
    j["algebra"] = alg.name();
    j["gram"] = std::move(rows);
    return j.dump(2) + "\n";
}

}  // namespace solvlie
