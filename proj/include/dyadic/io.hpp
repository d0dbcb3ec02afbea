#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyadic/gram.hpp"
#include "dyadic/sweep.hpp"
#include "dyadic/universality.hpp"

namespace dyadic::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Field specs: {"base":"Q2"} or
// {"unramified":[c_0,..,c_{f-1},1], "eisenstein":[[..],..,[1]], "precision":N}
// Eisenstein coefficients are integer coordinate vectors over the unramified
// subring; both polynomial entries are optional (trivial step when absent).
// ---------------------------------------------------------------------------

inline json field_to_json(const DyadicField& field) {
    const FieldSpec& s = field.spec();
    json j;
    if (s.unramified.empty() && s.eisenstein.empty()) {
        j["base"] = "Q2";
    } else {
        if (!s.unramified.empty()) {
            json u = json::array();
            for (auto c : s.unramified) u.push_back(c);
            u.push_back(1);
            j["unramified"] = u;
        }
        if (!s.eisenstein.empty()) {
            json e = json::array();
            for (const auto& c : s.eisenstein) e.push_back(c);
            e.push_back(json::array({1}));
            j["eisenstein"] = e;
        }
    }
    j["precision"] = s.precision;
    return j;
}

inline DyadicField field_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("field spec must be a JSON object");
    FieldSpec spec;
    if (j.contains("precision")) spec.precision = j.at("precision").get<int>();
    if (j.contains("base")) {
        if (j.at("base").get<std::string>() != "Q2")
            throw ParseError("unknown base field shortcut");
        return make_field(spec);
    }
    if (j.contains("unramified")) {
        auto u = j.at("unramified").get<std::vector<std::int64_t>>();
        if (u.size() < 2 || u.back() != 1)
            throw ParseError("unramified polynomial must be monic with degree >= 1");
        u.pop_back();
        spec.unramified = std::move(u);
    }
    if (j.contains("eisenstein")) {
        const json& e = j.at("eisenstein");
        if (!e.is_array() || e.size() < 2) throw ParseError("eisenstein: need degree >= 1");
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            spec.eisenstein.push_back(e[i].get<std::vector<std::int64_t>>());
        auto lead = e.back().get<std::vector<std::int64_t>>();
        if (lead.size() != 1 || lead[0] != 1)
            throw ParseError("eisenstein polynomial must be monic");
    }
    return make_field(spec);
}

inline DyadicField field_from_string(const std::string& text) {
    if (text == "Q2" || text == "q2") return q2_field();
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("field spec is neither 'Q2' nor valid JSON");
    return field_from_json(j);
}

// ---------------------------------------------------------------------------
// Elements. Over fields with f = e = 1 the canonical encoding is an integer
// or "m/2^t"; elsewhere {"val":v, "unit":[[coef,wdeg,pideg],..]}.
// ---------------------------------------------------------------------------

namespace detail {

inline std::int64_t signed_rep(std::uint64_t c, int bits) {
    std::uint64_t half = std::uint64_t(1) << (bits - 1);
    std::uint64_t span = (std::uint64_t(1) << bits);
    c &= span - 1;
    return c <= half ? std::int64_t(c) : std::int64_t(c) - std::int64_t(span);
}

inline std::int64_t parse_int(const std::string& s, std::size_t& pos) {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s.substr(pos), &used);
    if (used == 0) throw ParseError("expected integer in '" + s + "'");
    pos += used;
    return v;
}

}  // namespace detail

// "m", "m/2^t" or "m/d" with d a power of two.
inline FieldElement element_from_shorthand(const DyadicField& field, const std::string& text) {
    std::size_t pos = 0;
    std::int64_t num = detail::parse_int(text, pos);
    int t = 0;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        if (text.compare(pos, 2, "2^") == 0) {
            pos += 2;
            t = int(detail::parse_int(text, pos));
        } else {
            std::int64_t d = detail::parse_int(text, pos);
            if (d <= 0 || (d & (d - 1)) != 0)
                throw ParseError("denominator must be a power of two: " + text);
            t = std::countr_zero(std::uint64_t(d));
        }
    }
    if (pos != text.size()) throw ParseError("trailing characters in element '" + text + "'");
    return field.from_ratio(num, t);
}

inline json element_to_json(const FieldElement& x) {
    if (x.is_zero()) return 0;
    const FieldImpl& F = x.field().impl();
    if (F.f() == 1 && F.e() == 1) {
        std::int64_t u = detail::signed_rep(x.unit_coords()[0], F.coef_bits());
        std::int64_t v = x.valuation();
        if (v >= 0 && v <= 16 && std::llabs(u) < (std::int64_t(1) << 45))
            return u << v;
        if (v < 0) return std::to_string(u) + "/2^" + std::to_string(-v);
        json j;
        j["val"] = v;
        j["unit"] = json::array({json::array({u, 0, 0})});
        return j;
    }
    json terms = json::array();
    for (int b = 0; b < F.e(); ++b)
        for (int a = 0; a < F.f(); ++a) {
            std::uint64_t c = x.unit_coords()[F.idx(a, b)] & F.mask();
            if (!c) continue;
            terms.push_back(json::array({detail::signed_rep(c, F.coef_bits()), a, b}));
        }
    json j;
    j["val"] = x.valuation();
    j["unit"] = terms;
    return j;
}

inline FieldElement element_from_json(const DyadicField& field, const json& j) {
    if (j.is_number_integer()) return field.from_integer(j.get<std::int64_t>());
    if (j.is_string()) {
        if (field.f() != 1 || field.e() != 1)
            throw ParseError("rational shorthand is only defined for f = e = 1 fields");
        return element_from_shorthand(field, j.get<std::string>());
    }
    if (j.is_object() && j.contains("val") && j.contains("unit")) {
        const FieldImpl& F = field.impl();
        Coords c{};
        for (const json& term : j.at("unit")) {
            if (!term.is_array() || term.size() != 3)
                throw ParseError("unit terms must be [coef, wdeg, pideg]");
            std::int64_t coef = term[0].get<std::int64_t>();
            int a = term[1].get<int>(), b = term[2].get<int>();
            if (a < 0 || a >= F.f() || b < 0 || b >= F.e())
                throw ParseError("unit term degree outside the monomial basis");
            c[F.idx(a, b)] = (c[F.idx(a, b)] + std::uint64_t(coef)) & F.mask();
        }
        if (F.ord_coords(c).value_or(1) != 0)
            throw ParseError("element unit part is not a unit");
        return field.element(j.at("val").get<std::int64_t>(), c);
    }
    throw ParseError("unrecognized element encoding: " + j.dump());
}

inline FieldElement element_from_string(const DyadicField& field, const std::string& text) {
    if (!text.empty() && (std::isdigit((unsigned char)text[0]) || text[0] == '-'))
        return element_from_shorthand(field, text);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("element is neither shorthand nor valid JSON");
    return element_from_json(field, j);
}

// ---------------------------------------------------------------------------
// HalfInt, spaces, BONGs, Gram matrices.
// ---------------------------------------------------------------------------

inline json halfint_to_json(HalfInt v) {
    if (v.is_inf()) return "inf";
    if (v.is_integer()) return v.as_int();
    return v.str();  // "t/2"
}

inline json space_to_json(const DiagonalSpace& S) {
    json j = json::array();
    for (const auto& c : S.coeffs()) j.push_back(element_to_json(c));
    return j;
}

inline DiagonalSpace space_from_json(const DyadicField& field, const json& j) {
    if (!j.is_array()) throw ParseError("diagonal space must be a JSON array");
    std::vector<FieldElement> c;
    for (const json& x : j) c.push_back(element_from_json(field, x));
    return DiagonalSpace(field, std::move(c));
}

inline json bong_to_json(const GoodBongLattice& L) {
    json j;
    j["field"] = field_to_json(L.field());
    json arr = json::array();
    for (const auto& x : L.coeffs()) arr.push_back(element_to_json(x));
    j["bong"] = arr;
    return j;
}

// "<a1,a2,...>" shorthand (f = e = 1) or a JSON array of element encodings.
inline std::vector<FieldElement> bong_entries_from_string(const DyadicField& field,
                                                          const std::string& text) {
    std::vector<FieldElement> out;
    std::string body;
    if (!text.empty() && text.front() == '<' && text.back() == '>') {
        body = text.substr(1, text.size() - 2);
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            std::string tok = body.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
            while (!tok.empty() && tok.back() == ' ') tok.pop_back();
            if (tok.empty()) throw ParseError("empty BONG entry");
            out.push_back(element_from_shorthand(field, tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw ParseError("BONG must be '<...>' shorthand or a JSON array");
    for (const json& x : j) out.push_back(element_from_json(field, x));
    return out;
}

inline json gram_to_json(const GramLattice& G) {
    json j = json::array();
    for (const auto& x : G.entries()) j.push_back(element_to_json(x));
    return j;
}

inline GramLattice gram_from_json(const DyadicField& field, const json& j) {
    if (!j.is_array()) throw ParseError("Gram matrix must be a row-major JSON array");
    std::vector<FieldElement> g;
    for (const json& x : j) g.push_back(element_from_json(field, x));
    int m = int(std::llround(std::sqrt(double(g.size()))));
    if (std::size_t(m) * std::size_t(m) != g.size())
        throw ParseError("Gram matrix entry count is not a perfect square");
    return GramLattice(field, m, std::move(g));
}

// "diag(a,b,...)" shorthand or the row-major JSON array.
inline GramLattice gram_from_string(const DyadicField& field, const std::string& text) {
    if (text.rfind("diag(", 0) == 0 && text.back() == ')') {
        std::string inner = "<" + text.substr(5, text.size() - 6) + ">";
        return diagonal_gram(field, bong_entries_from_string(field, inner));
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("Gram is neither diag(...) nor valid JSON");
    return gram_from_json(field, j);
}

// ---------------------------------------------------------------------------
// Verdicts, invariants, sweep reports, errors.
// ---------------------------------------------------------------------------

inline json verdict_to_json(const UniversalityVerdict& v) {
    json j;
    j["universal"] = v.universal;
    j["route"] = route_name(v.route);
    json bindings = json::object();
    for (const auto& [k, val] : v.trace.bindings) bindings[k] = val;
    j["trace"] = json{{"clause", v.trace.clause}, {"bindings", bindings}};
    if (v.witness) j["witness"] = element_to_json(*v.witness);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline json invariants_to_json(const GoodBongLattice& L) {
    json j;
    json r = json::array(), alpha = json::array();
    for (int i = 1; i <= L.rank(); ++i) r.push_back(L.R(i));
    for (int i = 1; i <= L.rank() - 1; ++i) alpha.push_back(halfint_to_json(L.alpha(i)));
    j["R"] = r;
    j["alpha"] = alpha;
    return j;
}

inline json sweep_report_to_json(const SweepReport& r) {
    json j;
    j["total"] = r.total;
    j["universal_count"] = r.universal_count;
    j["rejected"] = r.rejected;
    json ms = json::array();
    for (const auto& m : r.mismatches) {
        json b = json::array();
        for (const auto& x : m.bong) b.push_back(element_to_json(x));
        ms.push_back(json{{"bong", b},
                          {"theorem", m.closed_form},
                          {"lemma", m.target_sweep},
                          {"oracle", m.oracle}});
    }
    j["mismatches"] = ms;
    return j;
}

inline json error_to_json(const Error& e) {
    json j;
    j["error"] = json{{"code", e.code()}, {"message", e.what()}};
    return j;
}

}  // namespace dyadic::io
