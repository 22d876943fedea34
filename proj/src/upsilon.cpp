#include "padicroots/upsilon.hpp"

#include <cstdint>

#include "padicroots/budgets.hpp"

namespace padicroots {

namespace {

void check_enumeration_budget(PrimeModulus p, unsigned k, const char* what) {
    BigInt size = upsilon_size(p, k);
    if (size > BigInt(static_cast<unsigned long>(budgets::kUpsilonEnumeration)))
        throw BudgetExceededError(std::string(what) + ": Upsilon_" + std::to_string(k) +
                                  " enumeration exceeds budget");
}

std::uint64_t eval_u64_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t x,
                           std::uint64_t m) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = (acc * x + coeffs[i]) % m;
    return acc;
}

} // namespace

BigInt upsilon_size(PrimeModulus p, unsigned k) {
    BigInt out;
    unsigned long e = static_cast<unsigned long>(k) * (k + 1) / 2;
    mpz_ui_pow_ui(out.get_mpz_t(), p.value(), e);
    return out;
}

ModPoly to_modpoly(const UpsilonElement& u) {
    PrimeModulus p(u.p);
    std::vector<BigInt> coeffs(u.k);
    BigInt pw = 1;
    for (unsigned i = 0; i < u.k; ++i) {
        coeffs[i] = u.digits.at(i) * pw;
        pw *= u.p;
    }
    return ModPoly(p, u.k, coeffs);
}

bool upsilon_membership(const ModPoly& g) {
    unsigned k = g.precision();
    if (g.degree() >= static_cast<long>(k))
        return false;
    BigInt pw = 1;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        if (i > 0)
            pw *= g.prime().value();
        if (!mpz_divisible_p(g.coeffs()[i].get_mpz_t(), pw.get_mpz_t()))
            return false;
    }
    return true;
}

UpsilonElement sample_upsilon(PrimeModulus p, unsigned k, RngStream& stream) {
    if (k == 0)
        throw InvalidArgumentError("sample_upsilon: k must be positive");
    UpsilonElement u;
    u.p = p.value();
    u.k = k;
    u.digits.resize(k);
    for (unsigned i = 0; i < k; ++i)
        u.digits[i] = stream.uniform_big(prime_power(p, k - i));
    return u;
}

UpsilonRange::UpsilonRange(PrimeModulus p, unsigned k) : p_(p.value()), k_(k) {
    if (k == 0)
        throw InvalidArgumentError("UpsilonRange: k must be positive");
    check_enumeration_budget(p, k, "enumerate");
    limits_.resize(k);
    for (unsigned i = 0; i < k; ++i)
        limits_[i] = prime_power(p, k - i);
    digits_.assign(k, BigInt(0));
}

bool UpsilonRange::next(UpsilonElement& out) {
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
    } else {
        // odometer with c_{k-1} fastest, so c_0 is most significant
        long i = static_cast<long>(k_) - 1;
        for (; i >= 0; --i) {
            digits_[i] += 1;
            if (digits_[i] < limits_[i])
                break;
            digits_[i] = 0;
        }
        if (i < 0) {
            done_ = true;
            return false;
        }
    }
    out.p = p_;
    out.k = k_;
    out.digits = digits_;
    return true;
}

bool has_non_simple_root(const ModPoly& g) {
    BigInt size = prime_power(g.prime(), g.precision());
    if (size > BigInt(static_cast<unsigned long>(budgets::kResidueScan)))
        throw BudgetExceededError("has_non_simple_root: residue scan exceeds budget");
    std::uint64_t pk = mpz_get_ui(size.get_mpz_t());
    std::vector<std::uint64_t> c(g.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mpz_get_ui(g.coeffs()[i].get_mpz_t());
    std::vector<std::uint64_t> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = (c[i] * (i % pk)) % pk;
    for (std::uint64_t x = 0; x < pk; ++x)
        if (eval_u64_mod(c, x, pk) == 0 && eval_u64_mod(d, x, pk) == 0)
            return true;
    return false;
}

Rational exact_mean_Hk_over_upsilon(PrimeModulus p, unsigned k) {
    if (k == 0)
        throw InvalidArgumentError("exact_mean_Hk_over_upsilon: k must be positive");
    check_enumeration_budget(p, 2 * k, "exact_mean_Hk_over_upsilon");
    UpsilonRange range(p, 2 * k);
    UpsilonElement u;
    BigInt total = 0;
    BigInt count = 0;
    while (range.next(u)) {
        total += henselian_count(to_modpoly(u), k);
        count += 1;
    }
    Rational mean(total, count);
    mean.canonicalize();
    return mean;
}

Rational exact_prob_non_simple(PrimeModulus p, unsigned k) {
    if (k == 0)
        throw InvalidArgumentError("exact_prob_non_simple: k must be positive");
    check_enumeration_budget(p, k, "exact_prob_non_simple");
    UpsilonRange range(p, k);
    UpsilonElement u;
    BigInt hits = 0;
    BigInt count = 0;
    while (range.next(u)) {
        if (has_non_simple_root(to_modpoly(u)))
            hits += 1;
        count += 1;
    }
    Rational prob(hits, count);
    prob.canonicalize();
    return prob;
}

} // namespace padicroots
