#include "padicroots/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>

namespace padicroots {

namespace {

void trim_leading_zeros(std::vector<BigInt>& c) {
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

const BigInt kZero = 0;

// Pseudo-remainder: the remainder of lc(b)^{deg a - deg b + 1} * a divided
// by b, which keeps the division in Z[X].
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    long db = b.degree();
    std::vector<BigInt> r = a.coeffs();
    const BigInt& d = b.leading();
    long e = a.degree() - db + 1;
    while (!r.empty() && static_cast<long>(r.size()) - 1 >= db) {
        long dr = static_cast<long>(r.size()) - 1;
        BigInt lead = r.back();
        for (auto& c : r)
            c *= d;
        for (long j = 0; j <= db; ++j)
            r[dr - db + j] -= lead * b.coeff(j);
        trim_leading_zeros(r);
        --e;
    }
    IntPoly rem{std::move(r)};
    if (e > 0) {
        BigInt scale;
        mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
        rem = scale * rem;
    }
    return rem;
}

// Divides every coefficient by div, asserting exactness.
IntPoly divide_coeffs_exact(const IntPoly& a, const BigInt& div) {
    if (div == 0)
        throw InternalError("division of polynomial coefficients by zero");
    std::vector<BigInt> out(a.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.coeffs()[i].get_mpz_t(),
                    div.get_mpz_t());
        if (r != 0)
            throw InternalError("inexact coefficient division in subresultant sequence");
        out[i] = std::move(q);
    }
    return IntPoly{std::move(out)};
}

BigInt pow_big(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// Primitive gcd of two nonzero primitive polynomials (subresultant PRS).
IntPoly primitive_gcd(IntPoly a, IntPoly b) {
    if (a.degree() < b.degree())
        std::swap(a, b);
    if (b.is_zero())
        return a;
    BigInt g = 1, h = 1;
    for (;;) {
        long delta = a.degree() - b.degree();
        IntPoly r = pseudo_rem(a, b);
        if (r.is_zero())
            return primitive_part(b);
        if (r.degree() == 0)
            return IntPoly::constant(1);
        a = b;
        BigInt div = g * pow_big(h, static_cast<unsigned long>(delta));
        b = divide_coeffs_exact(r, div);
        g = a.leading();
        if (delta > 0) {
            BigInt num = pow_big(g, static_cast<unsigned long>(delta));
            BigInt den = pow_big(h, static_cast<unsigned long>(delta - 1));
            BigInt q, rr;
            mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (rr != 0)
                throw InternalError("inexact h update in subresultant sequence");
            h = q;
        }
    }
}

} // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    trim_leading_zeros(coeffs_);
}

IntPoly IntPoly::constant(BigInt c) {
    if (c == 0)
        return IntPoly();
    return IntPoly{{std::move(c)}};
}

IntPoly IntPoly::monomial(BigInt c, std::size_t degree) {
    if (c == 0)
        return IntPoly();
    std::vector<BigInt> v(degree + 1);
    v[degree] = std::move(c);
    return IntPoly{std::move(v)};
}

const BigInt& IntPoly::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const BigInt& IntPoly::leading() const {
    if (coeffs_.empty())
        throw ZeroPolynomialError();
    return coeffs_.back();
}

IntPoly IntPoly::from_string(std::string_view text) {
    std::vector<BigInt> coeffs;
    std::size_t pos = 0;
    const std::size_t n = text.size();
    while (true) {
        std::size_t start = pos;
        while (pos < n && text[pos] != ',')
            ++pos;
        std::string token(text.substr(start, pos - start));
        // strip surrounding whitespace
        std::size_t b = token.find_first_not_of(" \t");
        std::size_t e = token.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw InvalidArgumentError("polynomial parse error at position " +
                                       std::to_string(start) + ": empty coefficient");
        token = token.substr(b, e - b + 1);
        std::size_t i = (token[0] == '-' || token[0] == '+') ? 1 : 0;
        if (i == token.size())
            throw InvalidArgumentError("polynomial parse error at position " +
                                       std::to_string(start) + ": sign without digits");
        for (std::size_t j = i; j < token.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(token[j])))
                throw InvalidArgumentError("polynomial parse error at position " +
                                           std::to_string(start + j) + ": unexpected '" +
                                           std::string(1, token[j]) + "'");
        coeffs.emplace_back(token);
        if (pos == n)
            break;
        ++pos; // skip ','
    }
    return IntPoly{std::move(coeffs)};
}

std::string IntPoly::to_string() const {
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            out += ',';
        out += coeffs_[i].get_str();
    }
    return out;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) + b.coeff(i);
    return IntPoly{std::move(c)};
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) - b.coeff(i);
    return IntPoly{std::move(c)};
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        return IntPoly();
    std::vector<BigInt> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPoly{std::move(c)};
}

IntPoly operator*(const BigInt& c, const IntPoly& a) {
    std::vector<BigInt> out(a.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * a.coeffs()[i];
    return IntPoly{std::move(out)};
}

IntPoly operator-(const IntPoly& a) {
    return BigInt(-1) * a;
}

BigInt eval(const IntPoly& f, const BigInt& x) {
    BigInt acc = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        acc *= x;
        acc += f.coeffs()[i];
    }
    return acc;
}

IntPoly derivative(const IntPoly& f) {
    if (f.coeffs().size() <= 1)
        return IntPoly();
    std::vector<BigInt> c(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        c[i - 1] = BigInt(static_cast<unsigned long>(i)) * f.coeffs()[i];
    return IntPoly{std::move(c)};
}

IntPoly compose_affine(const IntPoly& f, const BigInt& a, const BigInt& b) {
    if (f.is_zero())
        return IntPoly();
    // Taylor shift: coefficients of f(X + a), computed in place.
    std::vector<BigInt> c = f.coeffs();
    const std::size_t n = c.size();
    if (a != 0)
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;)
                c[j] += a * c[j + 1];
    // Then scale X -> bX.
    BigInt power = 1;
    for (std::size_t i = 1; i < n; ++i) {
        power *= b;
        c[i] *= power;
    }
    return IntPoly{std::move(c)};
}

BigInt content(const IntPoly& f) {
    BigInt g = 0;
    for (const auto& c : f.coeffs())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    BigInt c = content(f);
    if (f.leading() < 0)
        c = -c;
    return divide_coeffs_exact(f, c);
}

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero())
        throw ZeroPolynomialError();
    if (a.is_zero())
        return IntPoly();
    if (a.degree() < b.degree())
        throw InternalError("exact_divide: divisor degree exceeds dividend");
    std::vector<BigInt> r = a.coeffs();
    std::vector<BigInt> q(a.coeffs().size() - b.coeffs().size() + 1);
    long db = b.degree();
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        BigInt qi, rem;
        mpz_tdiv_qr(qi.get_mpz_t(), rem.get_mpz_t(), r[i + db].get_mpz_t(),
                    b.leading().get_mpz_t());
        if (rem != 0)
            throw InternalError("exact_divide: inexact leading division");
        q[i] = qi;
        if (qi != 0)
            for (long j = 0; j <= db; ++j)
                r[i + j] -= qi * b.coeff(j);
    }
    for (const auto& c : r)
        if (c != 0)
            throw InternalError("exact_divide: nonzero remainder");
    return IntPoly{std::move(q)};
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero())
        return IntPoly();
    if (a.is_zero())
        return b.leading() < 0 ? -b : b;
    if (b.is_zero())
        return a.leading() < 0 ? -a : a;
    BigInt c;
    mpz_gcd(c.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
    return c * primitive_gcd(primitive_part(a), primitive_part(b));
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    IntPoly fp = primitive_part(f);
    IntPoly d = derivative(fp);
    if (d.is_zero()) // constant polynomial
        return IntPoly::constant(1);
    IntPoly g = primitive_gcd(fp, primitive_part(d));
    IntPoly sf = exact_divide(fp, g);
    return primitive_part(sf);
}

BigInt resultant(const IntPoly& a_in, const IntPoly& b_in) {
    if (a_in.is_zero() || b_in.is_zero())
        return 0;
    IntPoly a = a_in, b = b_in;
    bool negate = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        negate = (a.degree() % 2 == 1) && (b.degree() % 2 == 1);
    }
    if (b.degree() == 0)
        return (negate ? BigInt(-1) : BigInt(1)) *
               pow_big(b.leading(), static_cast<unsigned long>(a.degree()));
    BigInt ca = content(a), cb = content(b);
    a = divide_coeffs_exact(a, ca);
    b = divide_coeffs_exact(b, cb);
    BigInt t = pow_big(ca, static_cast<unsigned long>(b.degree())) *
               pow_big(cb, static_cast<unsigned long>(a.degree()));
    BigInt g = 1, h = 1;
    int sign = negate ? -1 : 1;
    for (;;) {
        long delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1))
            sign = -sign;
        IntPoly r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero())
            return 0;
        BigInt div = g * pow_big(h, static_cast<unsigned long>(delta));
        b = divide_coeffs_exact(r, div);
        g = a.leading();
        if (delta > 0) {
            BigInt num = pow_big(g, static_cast<unsigned long>(delta));
            BigInt den = pow_big(h, static_cast<unsigned long>(delta - 1));
            BigInt q, rr;
            mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (rr != 0)
                throw InternalError("inexact h update in resultant");
            h = q;
        }
        if (b.degree() <= 0)
            break;
    }
    // b is a nonzero constant here.
    unsigned long da = static_cast<unsigned long>(a.degree());
    BigInt num = pow_big(b.leading(), da);
    BigInt den = da > 0 ? pow_big(h, da - 1) : BigInt(1);
    BigInt q, rr;
    mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rr != 0)
        throw InternalError("inexact final division in resultant");
    return sign * t * q;
}

BigInt discriminant(const IntPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    long n = f.degree();
    if (n < 1)
        throw InvalidArgumentError("discriminant requires degree >= 1");
    BigInt res = resultant(f, derivative(f));
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    if (r != 0)
        throw InternalError("discriminant: resultant not divisible by leading coefficient");
    long e = (n * (n - 1)) / 2;
    return (e % 2 == 1) ? BigInt(-q) : q;
}

} // namespace padicroots
