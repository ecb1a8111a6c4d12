#ifndef UNIVEXT_JSON_IO_HPP
#define UNIVEXT_JSON_IO_HPP

#include "univext/bundles.hpp"
#include "univext/calg.hpp"
#include "univext/liealg.hpp"
#include "univext/rational.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <filesystem>
#include <regex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace univext {

using json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

class JsonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses text; syntax errors carry line and column.
inline json parse_json_text(const std::string& text, const std::string& origin = "<input>")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw JsonError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw JsonError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline json rat_to_json(const Rat& r) { return format_rat(r); }

inline Rat rat_from_json(const json& j)
{
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw JsonError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

inline json vec_to_json(std::span<const Rat> v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_to_json(x));
    return a;
}

inline Vec vec_from_json(const json& j)
{
    if (!j.is_array()) throw JsonError("expected an array of rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

inline json mat_to_json(const Mat& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vec_to_json(m.row(r)));
    return rows;
}

inline Mat mat_from_json(const json& j, std::size_t cols)
{
    if (!j.is_array()) throw JsonError("expected a matrix as an array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) {
        rows.push_back(vec_from_json(r));
        if (rows.back().size() != cols) throw JsonError("matrix row has the wrong length");
    }
    return Mat::from_rows(cols, rows);
}

namespace detail {

inline std::size_t index_from_json(const json& j)
{
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) return j.get<std::size_t>();
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == s.size() && !s.empty()) return v;
    }
    throw JsonError("expected a basis index, got " + j.dump());
}

inline json table_to_json(std::size_t dim, const char* key, auto&& entry)
{
    json out{{"dim", dim}, {key, json::array()}};
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const SparseVec& v = entry(i, j);
            if (v.empty()) continue;
            json coeffs = json::array();
            for (const auto& [k, c] : v) coeffs.push_back(json::array({k, format_rat(c)}));
            out[key].push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
        }
    return out;
}

inline std::size_t read_dim(const json& j)
{
    if (!j.is_object() || !j.contains("dim")) throw JsonError("algebra JSON needs an object with \"dim\"");
    return index_from_json(j.at("dim"));
}

inline Vec read_coeffs(const json& entry, std::size_t dim)
{
    Vec v = zero_vec(dim);
    for (const auto& pair : entry.at("coeffs")) {
        if (!pair.is_array() || pair.size() != 2) throw JsonError("coefficient entries are [index, \"p/q\"] pairs");
        std::size_t k = index_from_json(pair[0]);
        if (k >= dim) throw JsonError("coefficient index " + std::to_string(k) + " out of range");
        v[k] += rat_from_json(pair[1]);
    }
    return v;
}

} // namespace detail

/// {"dim":n,"brackets":[{"i":0,"j":1,"coeffs":[[k,"p/q"],...]}]}; pairs with i < j.
inline json lie_to_json(const LieAlgebra& L)
{
    json j = detail::table_to_json(L.dim(), "brackets", [&](std::size_t a, std::size_t b) -> const SparseVec& {
        static const SparseVec empty;
        return a == b ? empty : L.bracket_basis(a, b);
    });
    if (!L.name().empty()) j["name"] = L.name();
    return j;
}

/// Reads brackets as given; [e_j,e_i] is filled by antisymmetry unless the
/// file lists it too, in which case both entries are kept verbatim so
/// validation can report the inconsistency.
inline LieAlgebra lie_from_json(const json& j)
{
    const std::size_t n = detail::read_dim(j);
    LieAlgebra L(n, j.value("name", std::string{}));
    if (!j.contains("brackets")) return L;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : j.at("brackets")) {
        std::size_t a = detail::index_from_json(e.at("i")), b = detail::index_from_json(e.at("j"));
        if (a >= n || b >= n) throw JsonError("bracket index out of range");
        Vec v = detail::read_coeffs(e, n);
        if (seen.count({b, a}) || a == b) {
            for (std::size_t k = 0; k < n; ++k) L.set_constant_raw(a, b, k, v[k]);
        } else {
            L.set_bracket(a, b, v);
        }
        seen.insert({a, b});
    }
    return L;
}

/// Same layout with "products"; an optional "unit" lists unit coordinates.
inline json comm_to_json(const CommAlgebra& A)
{
    json j = detail::table_to_json(A.dim(), "products", [&](std::size_t a, std::size_t b) -> const SparseVec& {
        return A.product_basis(a, b);
    });
    if (A.unit()) j["unit"] = vec_to_json(*A.unit());
    if (!A.name().empty()) j["name"] = A.name();
    return j;
}

inline CommAlgebra comm_from_json(const json& j)
{
    const std::size_t n = detail::read_dim(j);
    CommAlgebra A(n, j.value("name", std::string{}));
    if (j.contains("products"))
        for (const auto& e : j.at("products")) {
            std::size_t a = detail::index_from_json(e.at("i")), b = detail::index_from_json(e.at("j"));
            if (a >= n || b >= n) throw JsonError("product index out of range");
            A.set_product(a, b, detail::read_coeffs(e, n));
        }
    if (j.contains("unit")) {
        Vec u = vec_from_json(j.at("unit"));
        if (u.size() != n) throw JsonError("unit has the wrong length");
        A.set_unit(u);
    }
    return A;
}

/// {"coeffs":{"-1":"1"}}.
inline json laurent_to_json(const LaurentPoly& p)
{
    json c = json::object();
    for (const auto& [k, v] : p.coeffs()) c[std::to_string(k)] = format_rat(v);
    return {{"coeffs", c}};
}

inline LaurentPoly laurent_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object())
        throw JsonError("Laurent polynomial JSON needs an object \"coeffs\"");
    LaurentPoly p;
    for (const auto& [k, v] : j.at("coeffs").items()) {
        long deg = 0;
        std::size_t pos = 0;
        try {
            deg = std::stol(k, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != k.size() || k.empty()) throw JsonError("Laurent degree \"" + k + "\" is not an integer");
        p.set(deg, p.get(deg) + rat_from_json(v));
    }
    return p;
}

/// Source line of each element of the top-level array under `key`, in order.
/// A small scanner; the text is assumed to be valid JSON already.
inline std::vector<std::size_t> entry_lines(const std::string& text, const std::string& key)
{
    std::vector<std::size_t> lines;
    std::size_t line = 1, depth = 0, array_depth = 0;
    std::string last_string;
    bool in_array = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        if (c == '\n') {
            ++line;
        } else if (c == '"') {
            std::string s;
            for (++k; k < text.size() && text[k] != '"'; ++k) {
                if (text[k] == '\\') ++k;
                if (k < text.size()) s += text[k];
            }
            last_string = s;
        } else if (c == '{' || c == '[') {
            if (in_array && depth == array_depth) lines.push_back(line);
            ++depth;
            if (c == '[' && depth == 2 && !in_array && last_string == key) {
                in_array = true;
                array_depth = depth;
            }
        } else if (c == '}' || c == ']') {
            if (in_array && depth == array_depth) in_array = false;
            --depth;
        } else if (in_array && depth == array_depth && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
            // scalar element: count it once
            lines.push_back(line);
            while (k + 1 < text.size() && text[k + 1] != ',' && text[k + 1] != ']' && text[k + 1] != '\n') ++k;
        }
    }
    return lines;
}

namespace detail {

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw JsonError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Line of the first bracket entry touching two indices of the triple.
inline std::size_t triple_line(const json& brackets, const std::vector<std::size_t>& lines, std::size_t i, std::size_t j,
                               std::size_t k)
{
    auto in = [&](std::size_t x) { return x == i || x == j || x == k; };
    std::size_t n = 0;
    for (const auto& e : brackets) {
        if (n >= lines.size()) break;
        try {
            std::size_t a = index_from_json(e.at("i")), b = index_from_json(e.at("j"));
            if (in(a) && in(b) && a != b) return lines[n];
        } catch (const std::exception&) {
        }
        ++n;
    }
    return lines.empty() ? 1 : lines.front();
}

} // namespace detail

/// Reads and validates an algebra file. Errors read "path:line: message";
/// a Jacobi failure names the triple.
inline LieAlgebra load_lie_file(const std::string& path)
{
    const std::string text = detail::read_text(path);
    json j = parse_json_text(text, path);
    std::vector<std::size_t> lines = entry_lines(text, "brackets");
    LieAlgebra L;
    try {
        L = lie_from_json(j);
    } catch (const std::exception& e) {
        // locate the offending entry by reparsing entries one at a time
        std::size_t line = 1;
        if (j.is_object() && j.contains("brackets") && j.at("brackets").is_array()) {
            std::size_t n = 0, dim = 0;
            try {
                dim = detail::read_dim(j);
            } catch (const std::exception&) {
            }
            for (const auto& entry : j.at("brackets")) {
                try {
                    std::size_t a = detail::index_from_json(entry.at("i")), b = detail::index_from_json(entry.at("j"));
                    if (a >= dim || b >= dim) throw JsonError("index");
                    detail::read_coeffs(entry, dim);
                } catch (const std::exception&) {
                    if (n < lines.size()) line = lines[n];
                    break;
                }
                ++n;
            }
        }
        throw JsonError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    if (auto v = validate(L)) {
        std::size_t line = detail::triple_line(j.at("brackets"), lines, v->i, v->j, v->k);
        throw JsonError(path + ":" + std::to_string(line) + ": " + v->describe());
    }
    return L;
}

/// Catalog name or path to an algebra JSON file.
inline LieAlgebra load_lie(const std::string& source)
{
    if (std::filesystem::exists(source)) return load_lie_file(source);
    return catalog(source);
}

inline CommAlgebra load_comm(const std::string& source)
{
    if (!std::filesystem::exists(source)) {
        if (source == "exterior_pair") return exterior_pair();
        std::smatch m;
        static const std::regex re(R"((points|trunc|zero)\((\d{1,3})\))");
        if (std::regex_match(source, m, re)) {
            std::size_t n = std::stoul(m[2].str());
            if (m[1] == "points") return functions_on_points(n);
            if (m[1] == "trunc") return truncated_poly(n);
            return zero_product(n);
        }
        throw JsonError("unknown commutative algebra '" + source + "'");
    }
    const std::string text = detail::read_text(source);
    json j = parse_json_text(text, source);
    CommAlgebra A;
    try {
        A = comm_from_json(j);
    } catch (const std::exception& e) {
        throw JsonError(source + ":1: " + e.what());
    }
    if (auto v = validate_alg(A)) {
        std::vector<std::size_t> lines = entry_lines(text, "products");
        throw JsonError(source + ":" + std::to_string(lines.empty() ? 1 : lines.front()) + ": " + v->describe());
    }
    return A;
}

/// {"base":n,"cover":[[...],...],"fiber":"sl3" | {algebra},
///  "transitions":[{"i":0,"j":1,"p":0,"matrix":[[...],...]}]}.
inline json bundle_to_json(const DiscreteBundle& B, const std::string& fiber_ref = {})
{
    json j{{"base", B.base_size()}, {"cover", B.cover()}};
    j["fiber"] = fiber_ref.empty() ? lie_to_json(B.fiber()) : json(fiber_ref);
    j["transitions"] = json::array();
    for (std::size_t i = 0; i < B.cover().size(); ++i)
        for (std::size_t k = i + 1; k < B.cover().size(); ++k)
            for (std::size_t p : B.cover()[i]) {
                if (!B.cover()[k].count(p)) continue;
                Mat t = B.transition(i, k, p);
                if (t == Mat::identity(B.fiber().dim())) continue;
                j["transitions"].push_back({{"i", i}, {"j", k}, {"p", p}, {"matrix", mat_to_json(t)}});
            }
    return j;
}

inline DiscreteBundle bundle_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("base") || !j.contains("cover") || !j.contains("fiber"))
        throw JsonError("bundle JSON needs \"base\", \"cover\" and \"fiber\"");
    LieAlgebra g = j.at("fiber").is_string() ? load_lie(j.at("fiber").get<std::string>()) : lie_from_json(j.at("fiber"));
    require_valid(g);
    std::vector<std::set<std::size_t>> cover;
    for (const auto& U : j.at("cover")) {
        std::set<std::size_t> s;
        for (const auto& p : U) s.insert(detail::index_from_json(p));
        cover.push_back(std::move(s));
    }
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Mat> tr;
    if (j.contains("transitions"))
        for (const auto& t : j.at("transitions"))
            tr[{detail::index_from_json(t.at("i")), detail::index_from_json(t.at("j")), detail::index_from_json(t.at("p"))}] =
                mat_from_json(t.at("matrix"), g.dim());
    return DiscreteBundle(std::move(g), detail::index_from_json(j.at("base")), std::move(cover), std::move(tr));
}

} // namespace univext

#endif
