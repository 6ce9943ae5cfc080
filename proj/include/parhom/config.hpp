// Problem description files: a small TOML subset (sections, arrays-of-tables,
// integers, strings, nested arrays) and the builders turning a parsed file
// into groups, rings and modules.
#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glob.hpp"

namespace parhom {

struct ParseError : Error {
    int line;
    ParseError(int line, const std::string& m)
        : Error("line " + std::to_string(line) + ": " + m), line(line) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error(m) {}
};

/// A TOML value: integer, string, or array.
struct ConfigValue {
    enum class Kind { Int, Str, Arr };
    Kind kind = Kind::Int;
    long long i = 0;
    std::string s;
    std::vector<ConfigValue> a;
    int line = 0;

    long long as_int() const {
        if (kind != Kind::Int) throw ParseError(line, "expected an integer");
        return i;
    }
    const std::string& as_str() const {
        if (kind != Kind::Str) throw ParseError(line, "expected a string");
        return s;
    }
    const std::vector<ConfigValue>& as_arr() const {
        if (kind != Kind::Arr) throw ParseError(line, "expected an array");
        return a;
    }
    /// Scalar entries may be written as integers or as strings like "1/2".
    Scalar as_scalar(Ring ring) const {
        try {
            if (kind == Kind::Int) return Scalar::of(ring, i);
            if (kind == Kind::Str) return Scalar::parse(ring, s);
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
        throw ParseError(line, "expected a scalar");
    }
};

using ConfigTable = std::map<std::string, ConfigValue>;

/// Sections keyed by dotted path; [[path]] appends, [path] must be unique.
struct ConfigDoc {
    std::map<std::string, std::vector<ConfigTable>> sections;

    const ConfigTable* find(const std::string& path) const {
        auto it = sections.find(path);
        if (it == sections.end()) return nullptr;
        return &it->second.front();
    }
    const std::vector<ConfigTable>* list(const std::string& path) const {
        auto it = sections.find(path);
        if (it == sections.end()) return nullptr;
        return &it->second;
    }
};

namespace detail {

struct ConfigCursor {
    const std::string& text;
    std::size_t pos = 0;
    int line;

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == '\n') {
                ++line;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
                ++pos;
            } else {
                break;
            }
        }
    }

    ConfigValue value() {
        skip_ws();
        if (pos >= text.size()) throw ParseError(line, "unexpected end of value");
        ConfigValue v;
        v.line = line;
        char c = text[pos];
        if (c == '[') {
            ++pos;
            v.kind = ConfigValue::Kind::Arr;
            for (;;) {
                skip_ws();
                if (pos >= text.size())
                    throw ParseError(line, "unterminated array");
                if (text[pos] == ']') {
                    ++pos;
                    break;
                }
                v.a.push_back(value());
            }
        } else if (c == '"') {
            ++pos;
            v.kind = ConfigValue::Kind::Str;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\n') throw ParseError(line, "unterminated string");
                v.s += text[pos++];
            }
            if (pos >= text.size()) throw ParseError(line, "unterminated string");
            ++pos;
        } else if (c == '-' || (c >= '0' && c <= '9')) {
            std::string tok;
            if (c == '-') { tok += c; ++pos; }
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
                tok += text[pos++];
            if (tok.empty() || tok == "-")
                throw ParseError(line, "malformed integer");
            v.kind = ConfigValue::Kind::Int;
            v.i = std::stoll(tok);
        } else {
            throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
        return v;
    }
};

}  // namespace detail

inline ConfigDoc parse_config(const std::string& text) {
    ConfigDoc doc;
    ConfigTable* current = nullptr;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        // strip comment (strings in this subset never contain '#')
        std::size_t hash = raw.find('#');
        std::string s = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = s.find_last_not_of(" \t\r");
        s = s.substr(b, e - b + 1);
        if (s.front() == '[') {
            bool many = s.size() > 1 && s[1] == '[';
            std::string close = many ? "]]" : "]";
            if (s.size() < 2 * close.size() + 1 ||
                s.substr(s.size() - close.size()) != close)
                throw ParseError(line, "malformed section header");
            std::string path =
                s.substr(close.size(), s.size() - 2 * close.size());
            auto& vec = doc.sections[path];
            if (!many && !vec.empty())
                throw ParseError(line, "duplicate section [" + path + "]");
            vec.emplace_back();
            current = &vec.back();
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(line, "expected key = value");
        if (!current) throw ParseError(line, "key outside any section");
        std::string key = s.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key.empty()) throw ParseError(line, "empty key");
        std::string val = s.substr(eq + 1);
        // multi-line arrays: keep reading until brackets balance
        auto depth = [](const std::string& t) {
            int d = 0;
            bool str = false;
            for (char c : t) {
                if (c == '"') str = !str;
                if (str) continue;
                if (c == '[') ++d;
                if (c == ']') --d;
                if (c == '#') break;
            }
            return d;
        };
        int startline = line;
        while (depth(val) > 0) {
            if (!std::getline(in, raw))
                throw ParseError(line, "unterminated array");
            ++line;
            val += "\n" + raw;
        }
        detail::ConfigCursor cur{val, 0, startline};
        ConfigValue v = cur.value();
        cur.skip_ws();
        if (cur.pos != val.size())
            throw ParseError(cur.line, "trailing characters after value");
        if (current->count(key))
            throw ParseError(startline, "duplicate key '" + key + "'");
        (*current)[key] = std::move(v);
    }
    return doc;
}

// ---- group / ring / module builders ----

namespace detail {

/// "cyclic(4)", "dihedral(3)", "symmetric(3)" for product factors.
inline FiniteGroup group_from_short(const std::string& s, int line) {
    std::size_t open = s.find('('), close = s.find(')');
    if (open == std::string::npos || close != s.size() - 1 || close <= open + 1)
        throw ParseError(line, "malformed group spec '" + s + "'");
    std::string kind = s.substr(0, open);
    int n = std::stoi(s.substr(open + 1, close - open - 1));
    if (kind == "cyclic") return FiniteGroup::cyclic(n);
    if (kind == "dihedral") return FiniteGroup::dihedral(n);
    if (kind == "symmetric") return FiniteGroup::symmetric(n);
    throw ParseError(line, "unknown group kind '" + kind + "'");
}

inline const ConfigValue& need(const ConfigTable& t, const std::string& key,
                               const std::string& where) {
    auto it = t.find(key);
    if (it == t.end())
        throw ValidationError("missing key '" + key + "' in [" + where + "]");
    return it->second;
}

}  // namespace detail

inline GroupPtr build_group(const ConfigTable& t) {
    const std::string& kind = detail::need(t, "kind", "group").as_str();
    try {
        if (kind == "cyclic" || kind == "dihedral" || kind == "symmetric") {
            int n = static_cast<int>(detail::need(t, "n", "group").as_int());
            return std::make_shared<FiniteGroup>(detail::group_from_short(
                kind + "(" + std::to_string(n) + ")", 0));
        }
        if (kind == "product") {
            std::vector<FiniteGroup> factors;
            for (const ConfigValue& f :
                 detail::need(t, "factors", "group").as_arr())
                factors.push_back(detail::group_from_short(f.as_str(), f.line));
            return std::make_shared<FiniteGroup>(FiniteGroup::product(factors));
        }
        if (kind == "table") {
            std::vector<std::string> names;
            for (const ConfigValue& n :
                 detail::need(t, "names", "group").as_arr())
                names.push_back(n.as_str());
            std::vector<std::vector<int>> table;
            for (const ConfigValue& row :
                 detail::need(t, "table", "group").as_arr()) {
                table.emplace_back();
                for (const ConfigValue& v : row.as_arr())
                    table.back().push_back(static_cast<int>(v.as_int()));
            }
            return std::make_shared<FiniteGroup>(
                FiniteGroup::from_table(names, table));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const GroupTooLarge&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    throw ValidationError("unknown group kind '" + kind + "'");
}

inline Ring build_ring(const ConfigTable& t) {
    const std::string& kind = detail::need(t, "kind", "ring").as_str();
    if (kind == "Z") return Ring::Z();
    if (kind == "Q") return Ring::Q();
    if (kind == "GF") {
        long long p = detail::need(t, "p", "ring").as_int();
        try {
            return Ring::GF(p);
        } catch (const Error&) {
            throw ValidationError("p must be prime, got " + std::to_string(p));
        }
    }
    throw ValidationError("unknown ring kind '" + kind + "' (Z, Q or GF)");
}

/// Raw module description; matrices stay unparsed until the ring is fixed.
struct ModuleSpec {
    std::string kind;  // trivial | regular | b | rep | set_action | partial_action
    Side side = Side::Left;
    const ConfigTable* table = nullptr;
    const std::vector<ConfigTable>* entries = nullptr;  // [[module.theta/pi]]
};

/// Either flavor of partial module.
struct BuiltModule {
    std::optional<ParRepModule> rep;
    std::optional<PartialActionModule> action;
};

struct ProblemSpec {
    ConfigDoc doc;
    GroupPtr group;
    std::optional<Ring> ring;
    std::optional<ModuleSpec> module;
    std::optional<std::vector<int>> subgroup_ids;
};

inline ProblemSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open spec file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ProblemSpec spec;
    spec.doc = parse_config(buf.str());
    const ConfigTable* g = spec.doc.find("group");
    if (!g) throw ValidationError("missing [group] section");
    spec.group = build_group(*g);
    if (const ConfigTable* r = spec.doc.find("ring")) spec.ring = build_ring(*r);
    if (const ConfigTable* m = spec.doc.find("module")) {
        ModuleSpec ms;
        ms.kind = detail::need(*m, "kind", "module").as_str();
        auto side = m->find("side");
        if (side != m->end()) {
            const std::string& s = side->second.as_str();
            if (s == "left") ms.side = Side::Left;
            else if (s == "right") ms.side = Side::Right;
            else throw ValidationError("side must be \"left\" or \"right\"");
        }
        ms.table = m;
        ms.entries = spec.doc.list("module.pi");
        if (!ms.entries) ms.entries = spec.doc.list("module.theta");
        spec.module = ms;
    }
    if (const ConfigTable* s = spec.doc.find("subgroup")) {
        std::vector<int> ids;
        auto it = s->find("ids");
        if (it != s->end()) {
            for (const ConfigValue& v : it->second.as_arr())
                ids.push_back(static_cast<int>(v.as_int()));
        } else {
            for (const ConfigValue& v :
                 detail::need(*s, "elements", "subgroup").as_arr())
                ids.push_back(spec.group->id_of_name(v.as_str()));
        }
        spec.subgroup_ids = std::move(ids);
    }
    return spec;
}

namespace detail {

inline ExactMatrix matrix_of(const ConfigValue& v, Ring ring) {
    const auto& rows = v.as_arr();
    if (rows.empty()) return ExactMatrix(ring, 0, 0);
    ExactMatrix m(ring, rows.size(), rows.front().as_arr().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i].as_arr();
        if (row.size() != m.cols())
            throw ParseError(rows[i].line, "ragged matrix row");
        for (std::size_t j = 0; j < row.size(); ++j) {
            Scalar s = row[j].as_scalar(ring);
            if (!s.is_zero()) m.set(i, j, s);
        }
    }
    return m;
}

/// Collect per-element entry tables keyed by canonical element name.
inline std::vector<const ConfigTable*> per_element(
    const FiniteGroup& g, const std::vector<ConfigTable>* entries,
    const std::string& what) {
    std::vector<const ConfigTable*> out(g.order(), nullptr);
    if (entries)
        for (const ConfigTable& t : *entries) {
            int id = g.id_of_name(need(t, "g", what).as_str());
            if (out[id])
                throw ValidationError("duplicate " + what + " entry for '" +
                                      g.name(id) + "'");
            out[id] = &t;
        }
    for (int a = 0; a < g.order(); ++a)
        if (!out[a])
            throw ValidationError(what + " required for every group element"
                                  " (missing '" + g.name(a) + "')");
    return out;
}

}  // namespace detail

inline BuiltModule build_module(const ProblemSpec& spec, Ring ring) {
    if (!spec.module) throw ValidationError("missing [module] section");
    const ModuleSpec& ms = *spec.module;
    const FiniteGroup& g = *spec.group;
    BuiltModule out;
    if (ms.kind == "trivial") {
        out.rep = trivial_module(spec.group, ring, ms.side);
    } else if (ms.kind == "regular") {
        out.rep = regular_module(spec.group, ring, ms.side);
    } else if (ms.kind == "b") {
        out.rep = b_module(spec.group, ring, ms.side);
    } else if (ms.kind == "rep") {
        auto tables = detail::per_element(g, ms.entries, "pi");
        std::vector<ExactMatrix> pi;
        for (int a = 0; a < g.order(); ++a)
            pi.push_back(detail::matrix_of(
                detail::need(*tables[a], "matrix", "module.pi"), ring));
        out.rep = validate_partial_rep(spec.group, ring, ms.side, std::move(pi));
    } else if (ms.kind == "set_action") {
        SetPartialAction a;
        a.npoints = static_cast<int>(
            detail::need(*ms.table, "points", "module").as_int());
        auto tables = detail::per_element(g, ms.entries, "theta");
        for (int k = 0; k < g.order(); ++k) {
            std::vector<int> row;
            for (const ConfigValue& v :
                 detail::need(*tables[k], "map", "module.theta").as_arr())
                row.push_back(static_cast<int>(v.as_int()));
            if (static_cast<int>(row.size()) != a.npoints)
                throw ValidationError("theta map for '" + g.name(k) +
                                      "' must list every point");
            a.theta.push_back(std::move(row));
        }
        out.rep = linearize_set_action(spec.group, a, ring);
    } else if (ms.kind == "partial_action") {
        PartialActionModule m;
        m.G = spec.group;
        m.ring = ring;
        m.rank = static_cast<std::size_t>(
            detail::need(*ms.table, "rank", "module").as_int());
        auto tables = detail::per_element(g, ms.entries, "theta");
        for (int a = 0; a < g.order(); ++a) {
            // domain rows are ambient basis vectors of M_g; store as columns
            ExactMatrix d = detail::matrix_of(
                detail::need(*tables[a], "domain", "module.theta"), ring)
                                .transpose();
            if (d.cols() == 0) d = ExactMatrix(ring, m.rank, 0);
            if (d.rows() != m.rank)
                throw ValidationError("domain vectors for '" + g.name(a) +
                                      "' have the wrong length");
            m.domains.push_back(std::move(d));
        }
        for (int a = 0; a < g.order(); ++a)
            m.maps.push_back(detail::matrix_of(
                detail::need(*tables[a], "matrix", "module.theta"), ring));
        std::vector<std::string> bad = validate_partial_action(m);
        if (!bad.empty()) throw PartialRepAxiomViolation(std::move(bad));
        out.action = std::move(m);
    } else {
        throw ValidationError("unknown module kind '" + ms.kind + "'");
    }
    return out;
}

}  // namespace parhom
