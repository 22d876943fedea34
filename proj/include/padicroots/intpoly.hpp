#ifndef PADICROOTS_INTPOLY_HPP
#define PADICROOTS_INTPOLY_HPP

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "padicroots/errors.hpp"

namespace padicroots {

using BigInt = mpz_class;
using Rational = mpq_class;

// Dense integer polynomial with arbitrary-precision coefficients, stored in
// ascending degree. The zero polynomial is the empty coefficient sequence;
// otherwise the last stored coefficient is nonzero.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(BigInt c);
    static IntPoly monomial(BigInt c, std::size_t degree);

    // Text format: comma-separated decimal coefficients, ascending degree
    // ("-1,0,1" is X^2 - 1). to_string() of a parsed value round-trips.
    static IntPoly from_string(std::string_view text);
    std::string to_string() const;

    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    // Coefficient of X^i; zero beyond the stored degree.
    const BigInt& coeff(std::size_t i) const;
    const BigInt& leading() const;

    bool operator==(const IntPoly& other) const = default;

  private:
    std::vector<BigInt> coeffs_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const BigInt& c, const IntPoly& a);
IntPoly operator-(const IntPoly& a);

// Horner evaluation, exact.
BigInt eval(const IntPoly& f, const BigInt& x);

// Formal derivative.
IntPoly derivative(const IntPoly& f);

// g(X) = f(a + bX), exact Taylor shift then scale.
IntPoly compose_affine(const IntPoly& f, const BigInt& a, const BigInt& b);

// gcd of the coefficients, nonnegative; content of the zero polynomial is 0.
BigInt content(const IntPoly& f);

// f divided by its content, sign-normalized to a positive leading
// coefficient. Throws ZeroPolynomialError on zero input.
IntPoly primitive_part(const IntPoly& f);

// Exact quotient a / b; throws InternalError if b does not divide a.
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);

// Primitive gcd over Z computed with the subresultant remainder sequence,
// so the whole computation stays in exact integers.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// f / gcd(f, f') over the rationals, rescaled to primitive integer
// coefficients with positive leading coefficient. Same root set as f with
// all multiplicities one. Throws ZeroPolynomialError on zero input.
IntPoly squarefree_part(const IntPoly& f);

// Resultant of a and b via the subresultant algorithm, exact.
BigInt resultant(const IntPoly& a, const IntPoly& b);

// (-1)^{n(n-1)/2} resultant(f, f') / lc(f). Requires deg f >= 1.
BigInt discriminant(const IntPoly& f);

} // namespace padicroots

#endif
