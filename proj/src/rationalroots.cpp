#include "padicroots/rationalroots.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace padicroots {

std::vector<BigInt> divisors(const BigInt& n) {
    if (n == 0)
        throw InvalidArgumentError("divisors: n must be nonzero");
    BigInt a = abs(n);
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= a; ++d) {
        if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()))
            continue;
        small.push_back(d);
        BigInt q = a / d;
        if (q != d)
            large.push_back(q);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

long divisor_count(const BigInt& n) {
    if (n < 1)
        throw InvalidArgumentError("divisor_count: n must be at least 1");
    return static_cast<long>(divisors(n).size());
}

std::vector<BigInt> integer_roots(const IntPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    if (!f.is_monic())
        throw InvalidArgumentError("integer_roots: polynomial must be monic");
    std::size_t v = 0;
    while (f.coeff(v) == 0)
        ++v;
    std::vector<BigInt> roots;
    if (v >= 1)
        roots.push_back(0);
    if (v == static_cast<std::size_t>(f.degree()))
        return roots; // f = X^v
    std::vector<BigInt> reduced(f.coeffs().begin() + v, f.coeffs().end());
    IntPoly g{std::move(reduced)};
    for (const BigInt& d : divisors(g.coeff(0))) {
        if (eval(g, d) == 0)
            roots.push_back(d);
        if (eval(g, -d) == 0)
            roots.push_back(-d);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

EstimateResult mc_rational_root_count(const CoefficientLaw& law, unsigned n,
                                      long trials, std::uint64_t seed,
                                      unsigned threads) {
    if (!law.is_integer_supported())
        throw InvalidArgumentError("mc_rational_root_count needs a finite integer law");
    if (n == 0 || trials < 1)
        throw InvalidArgumentError("mc_rational_root_count: bad shape");
    // sampling needs an ambient prime only for Haar laws; any valid prime does
    PrimeModulus p(2);
    threads = std::max(1u, threads);
    if (static_cast<long>(threads) > trials)
        threads = static_cast<unsigned>(trials);

    struct Tally {
        std::int64_t sum = 0, sum_sq = 0;
        long max_count = 0;
    };
    std::vector<Tally> tallies(threads);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    long chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        long lo = w * chunk;
        long hi = std::min<long>(trials, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (long t = lo; t < hi; ++t) {
                    RngStream stream(seed, static_cast<std::uint64_t>(t));
                    IntPoly f = law.sample_poly(p, n, stream);
                    long c = static_cast<long>(integer_roots(f).size());
                    tallies[w].sum += c;
                    tallies[w].sum_sq += static_cast<std::int64_t>(c) * c;
                    tallies[w].max_count = std::max(tallies[w].max_count, c);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);

    EstimateResult out;
    out.trials = trials;
    out.seed = seed;
    for (const auto& tally : tallies) {
        out.sum += tally.sum;
        out.sum_sq += tally.sum_sq;
        out.max_count = std::max(out.max_count, tally.max_count);
    }
    return out;
}

} // namespace padicroots
