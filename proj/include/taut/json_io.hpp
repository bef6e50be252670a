#pragma once

#include "taut/taut.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace taut::io {

using json = nlohmann::json;

/// "Z" | "Z^k" | "Z/d" | "0", joined by "+"; spaces are ignored.
inline PresentedGroup parse_coefficients(const std::string& s)
{
    Vector orders;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto number = [&]() -> Integer {
        skip();
        const std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw ParseError("expected a number", start);
        return Integer(s.substr(start, i - start));
    };
    skip();
    if (i == s.size()) throw ParseError("empty coefficient group", 0);
    while (true) {
        skip();
        if (i < s.size() && s[i] == '0') {
            ++i;
        } else if (i < s.size() && s[i] == 'Z') {
            ++i;
            skip();
            if (i < s.size() && s[i] == '/') {
                ++i;
                const std::size_t at = i;
                const Integer d = number();
                if (d == 0) throw ParseError("Z/0 is not allowed, write Z", at);
                if (d > 1) orders.push_back(d);
            } else if (i < s.size() && s[i] == '^') {
                ++i;
                const std::size_t at = i;
                const Integer k = number();
                if (k > 64) throw ParseError("free rank too large", at);
                for (int j = 0; j < static_cast<int>(k); ++j) orders.push_back(0);
            } else {
                orders.push_back(0);
            }
        } else {
            throw ParseError("expected 'Z', 'Z/d', 'Z^k' or '0'", i);
        }
        skip();
        if (i == s.size()) break;
        if (s[i] != '+') throw ParseError("expected '+'", i);
        ++i;
    }
    return from_cyclic_orders(orders);
}

inline json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline Integer to_integer(const json& j)
{
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            throw InputError("'" + s + "' is not an integer");
        return Integer(s);
    }
    throw InputError("expected an integer, got " + j.dump());
}

/// A matrix is an array of rows, or {"rows": r, "cols": c, "entries": [...]}
/// which also covers shapes with no rows.
inline IntMatrix to_matrix(const json& j)
{
    if (j.is_object()) {
        const auto rows = field(j, "rows").get<std::size_t>(), cols = field(j, "cols").get<std::size_t>();
        IntMatrix m(rows, cols);
        if (j.contains("entries")) {
            const json& e = j.at("entries");
            if (!e.is_array() || e.size() != rows) throw InputError("matrix entries do not match the declared rows");
            for (std::size_t i = 0; i < rows; ++i) {
                if (!e[i].is_array() || e[i].size() != cols) throw InputError("matrix row " + std::to_string(i) + " has the wrong length");
                for (std::size_t k = 0; k < cols; ++k) m(i, k) = to_integer(e[i][k]);
            }
        }
        return m;
    }
    if (!j.is_array()) throw InputError("expected a matrix, got " + j.dump());
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix row " + std::to_string(i) + " has the wrong length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = to_integer(j[i][k]);
    }
    return m;
}

inline json from_matrix(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

/// A group is a coefficient string, {"orders": [...]} (0 = Z), or
/// {"relations": matrix} with one relation per column.
inline PresentedGroup to_group(const json& j)
{
    if (j.is_string()) return parse_coefficients(j.get<std::string>());
    if (j.is_object() && j.contains("orders")) {
        Vector orders;
        for (const auto& x : j.at("orders")) orders.push_back(to_integer(x));
        for (const auto& d : orders)
            if (d < 0) throw InputError("cyclic orders must be nonnegative");
        return from_cyclic_orders(orders);
    }
    if (j.is_object() && j.contains("relations")) return normalize(to_matrix(j.at("relations")));
    throw InputError("expected a group, got " + j.dump());
}

inline json from_group(const PresentedGroup& g)
{
    json torsion = json::array();
    for (const auto& d : g.torsion()) torsion.push_back(to_string(d));
    return {{"group", g.str()}, {"free_rank", g.free_rank()}, {"torsion", std::move(torsion)}};
}

inline GroupMap to_map(const json& j, const PresentedGroup& source, const PresentedGroup& target)
{
    return {source, target, to_matrix(j.is_object() && j.contains("matrix") ? j.at("matrix") : j)};
}

inline Direction to_direction(const json& j)
{
    const std::string s = j.get<std::string>();
    if (s == "chain") return Direction::Chain;
    if (s == "cochain") return Direction::Cochain;
    throw InputError("direction must be 'chain' or 'cochain', got '" + s + "'");
}

/// {"direction": "cochain", "lo": 0, "ranks": [..], "differentials": {"d": matrix}}
inline FreeComplex to_complex(const json& j)
{
    const Direction dir = to_direction(field(j, "direction"));
    const int lo = j.contains("lo") ? j.at("lo").get<int>() : 0;
    std::vector<std::size_t> ranks;
    for (const auto& r : field(j, "ranks")) ranks.push_back(r.get<std::size_t>());
    std::map<int, IntMatrix> diffs;
    if (j.contains("differentials"))
        for (const auto& [key, value] : j.at("differentials").items()) {
            int d = 0;
            try {
                d = std::stoi(key);
            } catch (const std::exception&) {
                throw InputError("differential key '" + key + "' is not a degree");
            }
            IntMatrix m = to_matrix(value);
            if (m.rows() == 0 && m.cols() == 0) {
                const int t = dir == Direction::Chain ? d - 1 : d + 1;
                auto rank = [&](int k) -> std::size_t {
                    return k >= lo && k < lo + static_cast<int>(ranks.size()) ? ranks[static_cast<std::size_t>(k - lo)] : 0;
                };
                m = IntMatrix(rank(t), rank(d));
            }
            diffs[d] = std::move(m);
        }
    return {dir, lo, std::move(ranks), std::move(diffs)};
}

namespace detail {

struct SystemParts {
    std::vector<PresentedGroup> groups;
    std::vector<IntMatrix> maps;
    std::optional<PresentedGroup> tail_group;
    std::optional<IntMatrix> endo;
    std::optional<IntMatrix> glue;
};

inline SystemParts read_system(const json& j)
{
    SystemParts p;
    if (!j.is_object()) throw InputError("expected a system object");
    if (j.contains("prefix")) {
        const json& prefix = j.at("prefix");
        for (const auto& g : field(prefix, "groups")) p.groups.push_back(to_group(g));
        if (prefix.contains("maps"))
            for (const auto& m : prefix.at("maps")) p.maps.push_back(to_matrix(m.is_object() && m.contains("matrix") ? m.at("matrix") : m));
    }
    if (j.contains("tail")) {
        const json& tail = j.at("tail");
        p.tail_group = to_group(field(tail, "group"));
        p.endo = to_matrix(field(tail, "endo"));
        if (tail.contains("glue")) p.glue = to_matrix(tail.at("glue"));
    }
    if (p.groups.empty() && !p.tail_group) throw InputError("system has neither a prefix nor a tail");
    if (!p.groups.empty() && p.maps.size() + 1 != p.groups.size())
        throw InputError("a prefix of " + std::to_string(p.groups.size()) + " groups needs " +
                         std::to_string(p.groups.size() - 1) + " maps");
    return p;
}

} // namespace detail

/// {"prefix": {"groups": [...], "maps": [...]}, "tail": {"group", "endo", "glue"}}
/// with maps[k] : A_{k+1} -> A_k and glue : B -> A_{m-1}.
inline Tower to_tower(const json& j)
{
    auto p = detail::read_system(j);
    std::vector<GroupMap> maps;
    for (std::size_t k = 0; k < p.maps.size(); ++k) maps.emplace_back(p.groups[k + 1], p.groups[k], p.maps[k]);
    std::optional<PeriodicTail> tail;
    if (p.tail_group) {
        PeriodicTail t{*p.tail_group, GroupMap(*p.tail_group, *p.tail_group, *p.endo), std::nullopt};
        if (p.glue) {
            if (p.groups.empty()) throw MalformedTower("glue map given without a prefix");
            t.glue = GroupMap(*p.tail_group, p.groups.back(), *p.glue);
        }
        tail = std::move(t);
    }
    return {std::move(p.groups), std::move(maps), std::move(tail)};
}

/// Same layout with maps[k] : A_k -> A_{k+1} and glue : A_{m-1} -> B.
inline Telescope to_telescope(const json& j)
{
    auto p = detail::read_system(j);
    std::vector<GroupMap> maps;
    for (std::size_t k = 0; k < p.maps.size(); ++k) maps.emplace_back(p.groups[k], p.groups[k + 1], p.maps[k]);
    std::optional<PeriodicTail> tail;
    if (p.tail_group) {
        PeriodicTail t{*p.tail_group, GroupMap(*p.tail_group, *p.tail_group, *p.endo), std::nullopt};
        if (p.glue) {
            if (p.groups.empty()) throw MalformedTelescope("glue map given without a prefix");
            t.glue = GroupMap(p.groups.back(), *p.tail_group, *p.glue);
        }
        tail = std::move(t);
    }
    return {std::move(p.groups), std::move(maps), std::move(tail)};
}

inline int to_degree(const std::string& key)
{
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 6)
        throw InputError("degree key '" + key + "' is not a nonnegative integer");
    return std::stoi(key);
}

/// {"group": g, "maps": [matrix per prefix stage], "tail_map": matrix}
inline ComparisonData to_comparison(const json& j, const Tower& h)
{
    ComparisonData c;
    c.group = to_group(field(j, "group"));
    if (j.contains("maps")) {
        const json& maps = j.at("maps");
        if (maps.size() != h.prefix_length())
            throw InputError("H_n(A) needs one map per prefix stage (" + std::to_string(h.prefix_length()) + ")");
        for (std::size_t k = 0; k < maps.size(); ++k) c.to_stage.push_back(to_map(maps[k], c.group, h.stage(k)));
    } else if (h.prefix_length() > 0) {
        throw InputError("H_n(A) needs maps into the prefix stages");
    }
    if (h.tail()) c.to_tail = to_map(field(j, "tail_map"), c.group, h.tail()->group);
    return c;
}

/// {"name", "homology": {"n": tower}, "cohomology": {"n": telescope},
///  "A": {"n": comparison}, "reduced": {same three keys}}
inline NeighborhoodTower to_neighborhood_tower(const json& j)
{
    if (!j.is_object()) throw InputError("expected a neighborhood tower object");
    NeighborhoodTower t;
    t.name = j.value("name", "input");
    auto read = [](const json& block, std::map<int, Tower>& homology, std::map<int, Telescope>& cohomology,
                   std::map<int, ComparisonData>& a, const NeighborhoodTower& base, bool reduced) {
        if (block.contains("homology"))
            for (const auto& [k, v] : block.at("homology").items()) homology[to_degree(k)] = to_tower(v);
        if (block.contains("cohomology"))
            for (const auto& [k, v] : block.at("cohomology").items()) cohomology[to_degree(k)] = to_telescope(v);
        if (block.contains("A"))
            for (const auto& [k, v] : block.at("A").items()) {
                const int n = to_degree(k);
                auto it = homology.find(n);
                const Tower h = it != homology.end() ? it->second : base.homology_at(n, reduced);
                a[n] = to_comparison(v, h);
            }
    };
    read(j, t.homology, t.cohomology, t.a, t, false);
    if (j.contains("reduced")) read(j.at("reduced"), t.reduced_homology, t.reduced_cohomology, t.reduced_a, t, true);
    return t;
}

inline std::vector<AtomSet> to_blocks(const json& j)
{
    std::vector<AtomSet> out;
    if (!j.is_array()) throw InputError("expected a list of atom sets");
    for (const auto& b : j) {
        AtomSet s;
        for (const auto& a : b) s.push_back(a.get<std::size_t>());
        out.push_back(std::move(s));
    }
    return out;
}

/// {"atoms": n, "nerve": [[atoms of a simplex], ...]}
inline FiniteModel to_model(const json& j)
{
    const auto atoms = field(j, "atoms").get<std::size_t>();
    std::vector<std::vector<std::size_t>> simplices;
    if (j.contains("nerve"))
        for (const auto& s : to_blocks(j.at("nerve"))) simplices.push_back(s);
    return {atoms, simplices};
}

/// Wraps nlohmann type errors as input errors.
template <class F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid input: ") + e.what());
    }
}

} // namespace taut::io
