#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/polynomials.hpp"

namespace cvxpoly {

namespace detail {

// Sparse term map keyed by exponent vector; dimension grows as variables
// appear.
struct TermMap {
    int dim = 0;
    std::map<std::vector<int>, double> terms;

    static TermMap constant(double v) {
        TermMap t;
        if (v != 0.0) t.terms[{}] = v;
        return t;
    }

    static TermMap variable(int axis) {
        TermMap t;
        t.dim = axis + 1;
        std::vector<int> e(axis + 1, 0);
        e[axis] = 1;
        t.terms[e] = 1.0;
        return t;
    }

    void widen(int d) {
        if (d <= dim) return;
        std::map<std::vector<int>, double> wide;
        for (auto& [e, c] : terms) {
            std::vector<int> ee = e;
            ee.resize(d, 0);
            wide[ee] = c;
        }
        terms = std::move(wide);
        dim = d;
    }

    TermMap& add(TermMap o, double sign) {
        const int d = std::max(dim, o.dim);
        widen(d);
        o.widen(d);
        for (auto& [e, c] : o.terms) {
            terms[e] += sign * c;
            if (terms[e] == 0.0) terms.erase(e);
        }
        return *this;
    }

    TermMap mul(TermMap o) const {
        TermMap r;
        r.dim = std::max(dim, o.dim);
        TermMap a = *this, b = std::move(o);
        a.widen(r.dim);
        b.widen(r.dim);
        for (auto& [ea, ca] : a.terms)
            for (auto& [eb, cb] : b.terms) {
                std::vector<int> e(r.dim);
                for (int i = 0; i < r.dim; ++i) e[i] = ea[i] + eb[i];
                r.terms[e] += ca * cb;
            }
        return r;
    }

    TermMap pow(int k) const {
        TermMap r = TermMap::constant(1.0);
        for (int i = 0; i < k; ++i) r = r.mul(*this);
        return r;
    }
};

class ExprParser {
  public:
    explicit ExprParser(const std::string& src) : s_(src) {}

    TermMap parse() {
        TermMap t = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " +
                         what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    TermMap expr() {
        TermMap acc = TermMap::constant(0.0);
        double sign = 1.0;
        if (eat('-'))
            sign = -1.0;
        else
            eat('+');
        acc.add(term(), sign);
        while (true) {
            if (eat('+'))
                acc.add(term(), 1.0);
            else if (eat('-'))
                acc.add(term(), -1.0);
            else
                break;
        }
        return acc;
    }

    TermMap term() {
        TermMap acc = factor();
        while (eat('*')) acc = acc.mul(factor());
        return acc;
    }

    TermMap factor() {
        TermMap base_val = base();
        if (eat('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected a nonnegative integer exponent");
            const int k = std::atoi(s_.substr(start, pos_ - start).c_str());
            if (k > 16) fail("exponent too large (max 16)");
            return base_val.pow(k);
        }
        return base_val;
    }

    TermMap base() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            TermMap t = expr();
            if (!eat(')')) fail("expected ')'");
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s_.c_str() + pos_, &end);
            if (end == s_.c_str() + pos_) fail("malformed number");
            pos_ = static_cast<std::size_t>(end - s_.c_str());
            return TermMap::constant(v);
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                const std::size_t start = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                const int k = std::atoi(s_.substr(start, pos_ - start).c_str());
                if (k < 1) fail("variable index must be >= 1");
                return TermMap::variable(k - 1);
            }
            return TermMap::variable(c == 'x' ? 0 : (c == 'y' ? 1 : 2));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parses a minimal infix polynomial literal over variables x, y, z or x1..xn
// with +, -, * and integer ^. `dim` forces the ambient dimension (-1 infers
// the smallest that fits).
inline Polynomial parse_polynomial(const std::string& text, int dim = -1) {
    detail::TermMap t = detail::ExprParser(text).parse();
    int n = std::max(t.dim, dim < 0 ? 1 : dim);
    if (dim >= 0 && t.dim > dim)
        throw InputError("polynomial literal uses variables beyond dimension " +
                         std::to_string(dim));
    t.widen(n);
    int degree = 0;
    for (const auto& [e, c] : t.terms) {
        int d = 0;
        for (int v : e) d += v;
        degree = std::max(degree, d);
    }
    Polynomial p(n, degree);
    for (const auto& [e, c] : t.terms) p.set_coeff(e, c);
    return p;
}

} // namespace cvxpoly
