#include "diophlab/poly.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace diophlab {

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars, 0u), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw ArityMismatch("variable index out of range");
    MultiPoly p(nvars);
    Monomial m(nvars, 0u);
    m[index] = 1;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (unsigned e : terms_.begin()->first)
        if (e != 0) return false;
    return true;
}

Rational MultiPoly::constant_value() const {
    if (!is_constant()) throw Error("constant_value: polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (unsigned e : m) s += e;
        if (s > d) d = s;
    }
    return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        if (m[var] > d) d = m[var];
    return d;
}

void MultiPoly::add_term(const Monomial& mono, const Rational& c) {
    if (mono.size() != nvars_) throw ArityMismatch("monomial arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw ArityMismatch("polynomial arity mismatch");
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw ArityMismatch("polynomial arity mismatch");
    MultiPoly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(nvars_, Rational(1));
    for (unsigned i = 0; i < e; ++i) r = r * (*this);
    return r;
}

Rational MultiPoly::eval(const RatVector& x) const {
    if (x.size() != nvars_) throw ArityMismatch("eval: point arity mismatch");
    Rational s(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
        s += t;
    }
    return s;
}

MultiPoly MultiPoly::shift_vars(std::size_t nvars, std::size_t offset) const {
    if (offset + nvars_ > nvars) throw ArityMismatch("shift_vars: target ring too small");
    MultiPoly r(nvars);
    for (const auto& [m, c] : terms_) {
        Monomial mm(nvars, 0u);
        for (std::size_t i = 0; i < nvars_; ++i) mm[offset + i] = m[i];
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        for (unsigned e : m)
            if (e) any_var = true;
        if (a != 1 || !any_var) os << rat_to_string(a);
        bool star = (a != 1 || !any_var);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (star) os << "*";
            os << "x" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
            star = true;
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t nvars;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    Integer read_uint() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected number at position " + std::to_string(start));
        return Integer(s.substr(start, pos - start));
    }

    MultiPoly primary() {
        skip();
        if (eat('(')) {
            MultiPoly p = expr();
            if (!eat(')')) throw ParseError("missing ')'");
            return p;
        }
        if (peek() == 'x') {
            ++pos;
            const Integer idx = read_uint();
            if (idx < 1 || idx > Integer(nvars))
                throw ParseError("variable x" + idx.str() + " out of range");
            return MultiPoly::variable(nvars, idx.convert_to<std::size_t>() - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer p = read_uint();
            if (eat('/')) {
                Integer q = read_uint();
                if (q == 0) throw ParseError("zero denominator");
                return MultiPoly::constant(nvars, Rational(p, q));
            }
            return MultiPoly::constant(nvars, Rational(p));
        }
        throw ParseError("unexpected character '" + std::string(1, peek()) + "'");
    }

    MultiPoly factor() {
        MultiPoly p = primary();
        if (eat('^')) {
            const Integer e = read_uint();
            if (e > 64) throw ParseError("exponent too large");
            p = p.pow(e.convert_to<unsigned>());
        }
        return p;
    }

    MultiPoly term() {
        MultiPoly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    MultiPoly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        MultiPoly p = term();
        if (neg) p = -p;
        while (true) {
            skip();
            if (eat('+')) p = p + term();
            else if (eat('-')) p = p - term();
            else break;
        }
        return p;
    }
};

} // namespace

MultiPoly parse_poly(const std::string& text, std::size_t nvars) {
    Parser p{text, 0, nvars};
    MultiPoly out = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw ParseError("trailing characters in polynomial '" + text + "'");
    return out;
}

MultiPoly det_poly(const std::vector<std::vector<MultiPoly>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw NotSquare("det_poly: not square");
    if (n == 0) throw NotSquare("det_poly: empty");
    const std::size_t nv = m[0][0].nvars();
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;

    std::function<MultiPoly(std::size_t, std::vector<std::size_t>&)> rec =
        [&](std::size_t row, std::vector<std::size_t>& active) -> MultiPoly {
        if (active.size() == 1) return m[row][active[0]];
        MultiPoly acc(nv);
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (m[row][active[k]].is_zero()) continue;
            std::vector<std::size_t> rest;
            rest.reserve(active.size() - 1);
            for (std::size_t j = 0; j < active.size(); ++j)
                if (j != k) rest.push_back(active[j]);
            MultiPoly sub = rec(row + 1, rest);
            MultiPoly piece = m[row][active[k]] * sub;
            acc = (k % 2 == 0) ? acc + piece : acc - piece;
        }
        return acc;
    };
    return rec(0, cols);
}

} // namespace diophlab
