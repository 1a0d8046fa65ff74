#pragma once

#include <map>
#include <string>
#include <vector>

#include "diophlab/matrix.hpp"
#include "diophlab/rational.hpp"

namespace diophlab {

// Sparse multivariate polynomial over Q with a fixed variable count.
// Terms are kept in lexicographic exponent order; zero coefficients are
// never stored, so equality of representations is equality of polynomials.
class MultiPoly {
public:
    using Monomial = std::vector<unsigned>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t index); // 0-based

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // 0 for the zero polynomial

    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rational& c) const;
    MultiPoly pow(unsigned e) const;
    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Rational eval(const RatVector& x) const;

    // Re-embed into a polynomial ring with `nvars` variables, sending
    // variable i to variable i + offset.
    MultiPoly shift_vars(std::size_t nvars, std::size_t offset) const;

    void add_term(const Monomial& mono, const Rational& c);
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    std::string to_string() const;

private:
    std::size_t nvars_ = 0;
    std::map<Monomial, Rational> terms_;
};

// Parses the text form used by manifold files: sums of terms like
// "x1^2 + 3/2*x2*x3 - 2", with parentheses allowed.
MultiPoly parse_poly(const std::string& text, std::size_t nvars);

// Exact determinant of a square matrix of polynomials (cofactor expansion).
MultiPoly det_poly(const std::vector<std::vector<MultiPoly>>& m);

} // namespace diophlab
