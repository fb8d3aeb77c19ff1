#pragma once

// Map files:
//   p: <poly in z>
//   q: <poly in z, w>
//   # comments
// Coefficients are exact: integers, rationals a/b, decimals (converted exactly)
// or complex "(re+im i)". An optional '*' may separate a coefficient from the
// variables.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "skewgreen/algebra.hpp"

namespace skewgreen {

struct MapFile {
    std::string source;
    SkewProduct<ExactComplex> map;
    /// Monic conjugate of map and the scalings (s, t) that produce it.
    Normalized normalized;
};

namespace mapfile_detail {

/// Base-10 digits to an integer; leading zeros are not an octal prefix.
inline BigInt decimal_digits(std::string_view digits) {
    const auto nz = digits.find_first_not_of('0');
    return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(digits.substr(nz)));
}

class Parser {
public:
    Parser(std::string_view text, int line) : s_(text), line_(line) {}

    void ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        ws();
        return pos_ >= s_.size();
    }
    char peek() {
        ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(line_, static_cast<int>(pos_) + 1, expected);
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    BigInt uint() {
        ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("unsigned integer");
        return decimal_digits(s_.substr(start, pos_ - start));
    }

    int exponent() {
        if (!accept('^')) return 1;
        const BigInt e = uint();
        if (e > 100000) fail("exponent <= 100000");
        return static_cast<int>(e.convert_to<long>());
    }

    /// int ("/" uint)? or a decimal; unsigned.
    Rational real() {
        ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string whole(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string frac(s_.substr(fs, pos_ - fs));
            if (whole.empty() && frac.empty()) fail("number");
            BigInt scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            const BigInt num = decimal_digits(whole + frac);
            return Rational(num, scale);
        }
        if (whole.empty()) fail("number");
        const BigInt num = decimal_digits(whole);
        if (accept('/')) {
            const BigInt den = uint();
            if (den == 0) fail("nonzero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    bool coeff_start() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(';
    }

    ExactComplex coeff() {
        if (!accept('(')) return ExactComplex(real());
        Rational re(0);
        Rational im(0);
        bool neg = accept('-');
        if (!neg) accept('+');
        Rational first = real();
        if (neg) first = -first;
        if (accept('i')) {
            im = first;
        } else {
            re = first;
            const char sign = peek();
            if (sign != '+' && sign != '-') fail("'+' or '-' before the imaginary part");
            ++pos_;
            if (peek() == 'i') {
                im = 1;
            } else {
                im = real();
            }
            expect('i');
            if (sign == '-') im = -im;
        }
        expect(')');
        return ExactComplex(re, im);
    }

    /// One signed term; returns false at end of input.
    bool term(bool first, ExactComplex& c, int& ze, int& we, bool allow_w) {
        if (at_end()) {
            if (first) fail("term");
            return false;
        }
        bool neg = false;
        if (accept('-')) {
            neg = true;
        } else if (!accept('+') && !first) {
            fail("'+' or '-'");
        }
        c = ExactComplex(1);
        bool has_coeff = false;
        if (coeff_start()) {
            c = coeff();
            has_coeff = true;
            accept('*');
        }
        ze = 0;
        we = 0;
        bool has_var = false;
        if (accept('z')) {
            ze = exponent();
            has_var = true;
        }
        if (allow_w && accept('w')) {
            we = exponent();
            has_var = true;
        }
        if (!has_coeff && !has_var) fail(allow_w ? "coefficient, 'z' or 'w'" : "coefficient or 'z'");
        if (neg) c = -c;
        return true;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
};

inline std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool blank(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

/// Integers print without a denominator.
inline std::string format_rational(const Rational& q) {
    return denominator(q) == 1 ? numerator(q).str() : to_string(q);
}

inline std::string format_coeff(const ExactComplex& c) {
    if (c.is_real()) return format_rational(c.real());
    std::string im = format_rational(c.imag());
    std::string sign = "+";
    if (!im.empty() && im[0] == '-') {
        sign = "-";
        im.erase(0, 1);
    }
    return "(" + format_rational(c.real()) + sign + im + "i)";
}

inline void append_term(std::string& out, bool first, ExactComplex c, const std::string& vars) {
    bool neg = c.is_real() && c.real() < 0;
    if (neg) c = -c;
    if (first) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    const bool unit = c.is_real() && c.real() == 1;
    if (vars.empty()) {
        out += format_coeff(c);
    } else {
        if (!unit) out += format_coeff(c) + " ";
        out += vars;
    }
}

inline std::string power(char v, int e) {
    if (e == 0) return "";
    return e == 1 ? std::string(1, v) : std::string(1, v) + "^" + std::to_string(e);
}

}  // namespace mapfile_detail

inline MapFile parse_map(const std::string& text) {
    using namespace mapfile_detail;
    std::vector<std::pair<int, std::string_view>> lines;
    std::string_view rest(text);
    int lineno = 0;
    while (!rest.empty() || lineno == 0) {
        ++lineno;
        const auto nl = rest.find('\n');
        const std::string_view line = rest.substr(0, nl);
        if (!blank(strip_comment(line))) lines.emplace_back(lineno, strip_comment(line));
        if (nl == std::string_view::npos) break;
        rest.remove_prefix(nl + 1);
    }
    if (lines.size() != 2) {
        const int at = lines.size() > 2 ? lines[2].first : lineno;
        throw ParseError(at, 1, lines.size() < 2 ? "lines 'p:' and 'q:'" : "end of file or comment");
    }

    Poly1<ExactComplex> p;
    {
        Parser ps(lines[0].second, lines[0].first);
        if (!ps.accept('p')) ps.fail("'p:'");
        ps.expect(':');
        ExactComplex c;
        int ze = 0, we = 0;
        for (bool first = true; ps.term(first, c, ze, we, false); first = false) p.add_term(ze, c);
    }
    Poly2<ExactComplex> q;
    {
        Parser ps(lines[1].second, lines[1].first);
        if (!ps.accept('q')) ps.fail("'q:'");
        ps.expect(':');
        ExactComplex c;
        int ze = 0, we = 0;
        for (bool first = true; ps.term(first, c, ze, we, true); first = false) q.add_term({ze, we}, c);
    }
    SkewProduct<ExactComplex> f(std::move(p), std::move(q));
    Normalized n = normalize_monic(f);
    return MapFile{text, std::move(f), std::move(n)};
}

inline std::string format_poly(const Poly1<ExactComplex>& p, char var = 'z') {
    using namespace mapfile_detail;
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        append_term(out, first, it->second, power(var, it->first));
        first = false;
    }
    return first ? "0" : out;
}

inline std::string format_poly(const Poly2<ExactComplex>& q) {
    using namespace mapfile_detail;
    std::string out;
    bool first = true;
    for (auto it = q.terms().rbegin(); it != q.terms().rend(); ++it) {
        std::string vars = power('z', it->first.z);
        const std::string wp = power('w', it->first.w);
        if (!vars.empty() && !wp.empty()) vars += " ";
        vars += wp;
        append_term(out, first, it->second, vars);
        first = false;
    }
    return first ? "0" : out;
}

inline std::string format_map(const SkewProduct<ExactComplex>& f) {
    return "p: " + format_poly(f.p()) + "\nq: " + format_poly(f.q()) + "\n";
}

}  // namespace skewgreen
