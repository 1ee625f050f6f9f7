#pragma once

#include "regorb/certify.hpp"
#include "regorb/mat.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace regorb {

enum class ScalarMode { None, Full, List };

/**
 * @brief A group given by generator matrices over a declared field.
 *
 * Text format, one directive per line, `#` starts a comment:
 *   field p k [c0 ... c_{k-1}]
 *   dim d
 *   gen a_11 a_12 ... a_dd        (row-major, entries as integer codes)
 *   scalars full | none | z1 z2 ...
 *   label <text>
 *   order N                       (optional declared |G|)
 */
struct GroupInput {
    std::string label;
    FieldPtr field;
    bool explicit_defpoly = false;
    std::uint32_t dim = 0;
    std::vector<Mat> gens;
    ScalarMode scalars = ScalarMode::None;
    std::vector<Elt> scalar_list;
    std::optional<BigInt> declared_order;

    /// The generators with the declared scalar matrices appended.
    std::vector<Mat> all_generators() const {
        std::vector<Mat> out = gens;
        if (scalars == ScalarMode::Full && field->q() > 2)
            out.push_back(Mat::scalar(field, dim, field->primitive_element()));
        if (scalars == ScalarMode::List)
            for (auto z : scalar_list) out.push_back(Mat::scalar(field, dim, z));
        return out;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::string strip_comment(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    return trim(line);
}

[[noreturn]] inline void parse_fail(const std::string& src, int lineno, const std::string& what) {
    throw Error(ErrorKind::ParseError, src + ":" + std::to_string(lineno) + ": " + what);
}

inline std::uint64_t read_uint(std::istringstream& ss, const std::string& src, int lineno, const std::string& what) {
    std::string tok;
    if (!(ss >> tok)) parse_fail(src, lineno, "missing " + what);
    std::uint64_t v = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) parse_fail(src, lineno, "bad " + what + " '" + tok + "'");
        if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) parse_fail(src, lineno, what + " too large");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

inline BigInt read_bigint(const std::string& tok, const std::string& src, int lineno, const std::string& what) {
    if (tok.empty()) parse_fail(src, lineno, "missing " + what);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c))) parse_fail(src, lineno, "bad " + what + " '" + tok + "'");
    return BigInt(tok);
}

inline Rational read_rational(const std::string& tok, const std::string& src, int lineno, const std::string& what) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rational(read_bigint(tok, src, lineno, what));
    BigInt n = read_bigint(tok.substr(0, slash), src, lineno, what);
    BigInt d = read_bigint(tok.substr(slash + 1), src, lineno, what);
    if (d == 0) parse_fail(src, lineno, "zero denominator in " + what);
    return Rational(n, d);
}

} // namespace detail

inline GroupInput parse_input(std::istream& in, const std::string& src = "<input>", const FieldDb* db = nullptr) {
    GroupInput g;
    std::string raw;
    int lineno = 0;
    std::vector<std::pair<int, std::vector<std::uint64_t>>> pending;
    bool have_dim = false;
    bool have_scalars = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "field") {
            if (g.field) detail::parse_fail(src, lineno, "field declared twice");
            std::uint64_t p = detail::read_uint(ss, src, lineno, "characteristic");
            std::uint64_t k = detail::read_uint(ss, src, lineno, "degree");
            std::vector<std::uint32_t> coeffs;
            std::string tok;
            while (ss >> tok) {
                std::istringstream ts(tok);
                coeffs.push_back(static_cast<std::uint32_t>(detail::read_uint(ts, src, lineno, "coefficient")));
            }
            if (!coeffs.empty() && coeffs.size() != k)
                detail::parse_fail(src, lineno, "expected " + std::to_string(k) + " polynomial coefficients");
            g.explicit_defpoly = !coeffs.empty();
            g.field = Field::make(p, k, g.explicit_defpoly ? std::optional(coeffs) : std::nullopt, db);
        } else if (key == "dim") {
            if (have_dim) detail::parse_fail(src, lineno, "dim declared twice");
            std::uint64_t d = detail::read_uint(ss, src, lineno, "dimension");
            if (d > 4096) detail::parse_fail(src, lineno, "dimension too large");
            g.dim = static_cast<std::uint32_t>(d);
            have_dim = true;
        } else if (key == "gen") {
            std::vector<std::uint64_t> vals;
            std::string tok;
            while (ss >> tok) {
                std::istringstream ts(tok);
                vals.push_back(detail::read_uint(ts, src, lineno, "matrix entry"));
            }
            pending.emplace_back(lineno, std::move(vals));
        } else if (key == "scalars") {
            if (have_scalars) detail::parse_fail(src, lineno, "scalars declared twice");
            have_scalars = true;
            std::string tok;
            std::vector<std::uint64_t> vals;
            while (ss >> tok) {
                if (tok == "full" || tok == "none") {
                    if (!vals.empty() || g.scalars != ScalarMode::None) detail::parse_fail(src, lineno, "bad scalars line");
                    g.scalars = tok == "full" ? ScalarMode::Full : ScalarMode::None;
                    if (ss >> tok) detail::parse_fail(src, lineno, "trailing tokens after scalars " + tok);
                    break;
                }
                std::istringstream ts(tok);
                vals.push_back(detail::read_uint(ts, src, lineno, "scalar"));
            }
            if (!vals.empty()) {
                g.scalars = ScalarMode::List;
                for (auto v : vals) g.scalar_list.push_back(static_cast<Elt>(std::min<std::uint64_t>(v, 0xffffffffu)));
                pending.emplace_back(-lineno, std::vector<std::uint64_t>{});
            }
        } else if (key == "label") {
            std::string rest;
            std::getline(ss, rest);
            g.label = detail::trim(rest);
        } else if (key == "order") {
            std::string tok;
            ss >> tok;
            g.declared_order = detail::read_bigint(tok, src, lineno, "group order");
            if (*g.declared_order < 1) detail::parse_fail(src, lineno, "group order must be positive");
        } else {
            detail::parse_fail(src, lineno, "unknown directive '" + key + "'");
        }
    }
    if (!g.field) throw Error(ErrorKind::ParseError, src + ": missing field line");
    if (!have_dim) throw Error(ErrorKind::ParseError, src + ": missing dim line");
    const std::size_t n2 = static_cast<std::size_t>(g.dim) * g.dim;
    for (auto& [ln, vals] : pending) {
        if (ln < 0) {
            for (auto z : g.scalar_list)
                if (z == 0 || z >= g.field->q())
                    throw Error(ErrorKind::FieldMismatch,
                                src + ":" + std::to_string(-ln) + ": scalar " + std::to_string(z) + " is not a unit of " +
                                    g.field->describe());
            continue;
        }
        if (vals.size() != n2)
            detail::parse_fail(src, ln, "expected " + std::to_string(n2) + " entries, got " + std::to_string(vals.size()));
        std::vector<Elt> e(n2);
        for (std::size_t i = 0; i < n2; ++i) {
            if (vals[i] >= g.field->q())
                throw Error(ErrorKind::FieldMismatch, src + ":" + std::to_string(ln) + ": entry " + std::to_string(vals[i]) +
                                                          " is not an element of " + g.field->describe());
            e[i] = static_cast<Elt>(vals[i]);
        }
        Mat m(g.field, g.dim, std::move(e));
        if (!m.invertible())
            throw Error(ErrorKind::SingularGenerator, src + ":" + std::to_string(ln) + ": generator is singular");
        g.gens.push_back(std::move(m));
    }
    return g;
}

inline GroupInput parse_input_file(const std::string& path, const FieldDb* db = nullptr) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse_input(in, path, db);
}

inline GroupInput parse_input_string(const std::string& text, const FieldDb* db = nullptr) {
    std::istringstream in(text);
    return parse_input(in, "<string>", db);
}

inline std::string serialize_input(const GroupInput& g) {
    std::ostringstream out;
    if (!g.label.empty()) out << "label " << g.label << "\n";
    out << "field " << g.field->p() << " " << g.field->k();
    if (g.explicit_defpoly)
        for (auto c : g.field->defpoly()) out << " " << c;
    out << "\n";
    out << "dim " << g.dim << "\n";
    for (const auto& m : g.gens) {
        out << "gen";
        for (auto x : m.entries()) out << " " << x;
        out << "\n";
    }
    switch (g.scalars) {
    case ScalarMode::None: out << "scalars none\n"; break;
    case ScalarMode::Full: out << "scalars full\n"; break;
    case ScalarMode::List:
        out << "scalars";
        for (auto z : g.scalar_list) out << " " << z;
        out << "\n";
        break;
    }
    if (g.declared_order) out << "order " << g.declared_order->str() << "\n";
    return out.str();
}

/**
 * @brief Class data, one class per line:
 *   label size proj_order unipotent evidence...
 * where unipotent is yes/no (also true/false, 1/0) and evidence is one or
 * more of `profile k:dim,k:dim,...`, `emax N`, `alpha A` (A may be n/m).
 */
inline std::vector<ClassEntry> parse_classes(std::istream& in, const std::string& src = "<classes>") {
    std::vector<ClassEntry> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        ClassEntry c;
        std::string size_tok, order_tok, uni_tok;
        if (!(ss >> c.label >> size_tok >> order_tok >> uni_tok)) detail::parse_fail(src, lineno, "expected label size proj_order unipotent");
        c.class_size = detail::read_bigint(size_tok, src, lineno, "class size");
        {
            std::istringstream os(order_tok);
            c.proj_order = detail::read_uint(os, src, lineno, "projective order");
        }
        if (!is_prime(c.proj_order)) detail::parse_fail(src, lineno, "projective order must be prime");
        if (uni_tok == "yes" || uni_tok == "true" || uni_tok == "1") {
            c.unipotent = true;
        } else if (uni_tok == "no" || uni_tok == "false" || uni_tok == "0") {
            c.unipotent = false;
        } else {
            detail::parse_fail(src, lineno, "unipotent flag must be yes or no");
        }
        std::string kind;
        while (ss >> kind) {
            std::string val;
            if (!(ss >> val)) detail::parse_fail(src, lineno, "missing value after " + kind);
            if (kind == "profile") {
                std::map<std::uint64_t, std::uint32_t> prof;
                std::istringstream ps(val);
                std::string item;
                while (std::getline(ps, item, ',')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos) detail::parse_fail(src, lineno, "profile items are kappa:dim");
                    std::istringstream ks(item.substr(0, colon)), ds(item.substr(colon + 1));
                    std::uint64_t k = detail::read_uint(ks, src, lineno, "kappa");
                    std::uint64_t d = detail::read_uint(ds, src, lineno, "dimension");
                    if (k == 0) detail::parse_fail(src, lineno, "kappa must be nonzero");
                    if (prof.count(k)) detail::parse_fail(src, lineno, "kappa listed twice");
                    prof[k] = static_cast<std::uint32_t>(d);
                }
                c.evidence.profile = std::move(prof);
            } else if (kind == "emax") {
                std::istringstream es(val);
                c.evidence.emax = static_cast<std::uint32_t>(detail::read_uint(es, src, lineno, "emax"));
            } else if (kind == "alpha") {
                c.evidence.alpha = detail::read_rational(val, src, lineno, "alpha");
                if (*c.evidence.alpha < 2) detail::parse_fail(src, lineno, "alpha must be at least 2");
            } else {
                detail::parse_fail(src, lineno, "unknown evidence '" + kind + "'");
            }
        }
        if (!c.evidence.profile && !c.evidence.emax && !c.evidence.alpha)
            detail::parse_fail(src, lineno, "class " + c.label + " has no evidence");
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<ClassEntry> parse_classes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse_classes(in, path);
}

struct AlphaOverride {
    Rational alpha;
    std::string source;
};

/// Lines `label alpha_value source_note...`.
inline std::map<std::string, AlphaOverride> parse_alphas(std::istream& in, const std::string& src = "<alphas>") {
    std::map<std::string, AlphaOverride> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string label, val;
        if (!(ss >> label >> val)) detail::parse_fail(src, lineno, "expected label alpha_value source_note");
        AlphaOverride o;
        o.alpha = detail::read_rational(val, src, lineno, "alpha");
        if (o.alpha < 2) detail::parse_fail(src, lineno, "alpha must be at least 2");
        std::string rest;
        std::getline(ss, rest);
        o.source = detail::trim(rest);
        if (out.count(label)) detail::parse_fail(src, lineno, "label " + label + " listed twice");
        out[label] = std::move(o);
    }
    return out;
}

inline std::map<std::string, AlphaOverride> parse_alphas_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse_alphas(in, path);
}

} // namespace regorb
