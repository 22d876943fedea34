#include "padicroots/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "padicroots/budgets.hpp"

namespace padicroots {

namespace {

double mean_of(std::int64_t sum, long trials) {
    return trials > 0 ? static_cast<double>(sum) / static_cast<double>(trials) : 0.0;
}

double std_error_of(std::int64_t sum, std::int64_t sum_sq, long trials) {
    if (trials < 2)
        return 0.0;
    double t = static_cast<double>(trials);
    double var = (static_cast<double>(sum_sq) -
                  static_cast<double>(sum) * static_cast<double>(sum) / t) /
                 (t - 1.0);
    if (var < 0)
        var = 0;
    return std::sqrt(var / t);
}

enum class McMode { Total, F0, FiniteField };

struct WorkerTally {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    long max_count = 0;
    std::vector<std::int64_t> residue_sum;
    std::vector<std::int64_t> residue_sum_sq;
    long audited = 0;
    long audit_skipped = 0;
    unsigned precision_consumed = 0;
};

long finite_field_count(const IntPoly& f, unsigned long p) {
    std::vector<std::uint64_t> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    long count = 0;
    for (unsigned long r = 0; r < p; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            acc = (acc * r + c[i]) % p;
        if (acc == 0)
            ++count;
    }
    return count;
}

void run_trial_range(const ExperimentConfig& cfg, McMode mode, PrimeModulus p,
                     long lo, long hi, WorkerTally& tally) {
    const unsigned long pv = p.value();
    if (cfg.per_residue) {
        tally.residue_sum.assign(pv, 0);
        tally.residue_sum_sq.assign(pv, 0);
    }
    for (long t = lo; t < hi; ++t) {
        RngStream trial_stream(cfg.seed, static_cast<std::uint64_t>(t));
        IntPoly f = cfg.law.sample_poly(p, cfg.n, trial_stream);
        long count = 0;
        RootCountDiagnostics diag;
        bool audit_due = cfg.audit_interval > 0 && t % cfg.audit_interval == 0;
        switch (mode) {
        case McMode::Total: {
            std::vector<long> per_r = count_roots_by_residue(f, p, diag);
            for (unsigned long r = 0; r < pv; ++r)
                count += per_r[r];
            if (cfg.per_residue)
                for (unsigned long r = 0; r < pv; ++r) {
                    tally.residue_sum[r] += per_r[r];
                    tally.residue_sum_sq[r] += per_r[r] * per_r[r];
                }
            if (audit_due) {
                // certified recount plus an independent whole-count for the
                // partition identity
                try {
                    long certified = count_roots_zp_certified(f, p);
                    if (certified != count)
                        throw InternalError("audit mismatch: certified=" +
                                            std::to_string(certified) + " descent=" +
                                            std::to_string(count) + " at trial " +
                                            std::to_string(t));
                    ++tally.audited;
                } catch (const BudgetExceededError&) {
                    ++tally.audit_skipped;
                }
                long whole = count_roots_zp(f, p);
                if (whole != count)
                    throw InternalError("partition identity violated at trial " +
                                        std::to_string(t));
            }
            break;
        }
        case McMode::F0: {
            count = count_roots_residue(f, p, 0, diag);
            if (audit_due) {
                try {
                    long certified =
                        count_roots_zp_certified(compose_affine(f, BigInt(0), BigInt(pv)), p);
                    if (certified != count)
                        throw InternalError("f0 audit mismatch at trial " + std::to_string(t));
                    ++tally.audited;
                } catch (const BudgetExceededError&) {
                    ++tally.audit_skipped;
                }
            }
            break;
        }
        case McMode::FiniteField:
            count = finite_field_count(f, pv);
            break;
        }
        tally.sum += count;
        tally.sum_sq += static_cast<std::int64_t>(count) * count;
        tally.max_count = std::max(tally.max_count, count);
        tally.precision_consumed = std::max(tally.precision_consumed, diag.precision_consumed);
    }
}

EstimateResult run_mc(const ExperimentConfig& cfg, McMode mode) {
    if (cfg.trials < 1)
        throw InvalidArgumentError("trials must be at least 1");
    PrimeModulus p(cfg.p);
    unsigned threads = std::max(1u, cfg.threads);
    if (static_cast<long>(threads) > cfg.trials)
        threads = static_cast<unsigned>(cfg.trials);

    std::vector<WorkerTally> tallies(threads);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    long chunk = (cfg.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        long lo = w * chunk;
        long hi = std::min<long>(cfg.trials, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&, lo, hi, w] {
            try {
                run_trial_range(cfg, mode, p, lo, hi, tallies[w]);
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
    out.trials = cfg.trials;
    out.seed = cfg.seed;
    if (cfg.per_residue) {
        out.residue_sum.assign(p.value(), 0);
        out.residue_sum_sq.assign(p.value(), 0);
    }
    for (const auto& tally : tallies) {
        out.sum += tally.sum;
        out.sum_sq += tally.sum_sq;
        out.max_count = std::max(out.max_count, tally.max_count);
        out.audited += tally.audited;
        out.audit_skipped += tally.audit_skipped;
        out.precision_consumed = std::max(out.precision_consumed, tally.precision_consumed);
        if (cfg.per_residue && !tally.residue_sum.empty())
            for (unsigned long r = 0; r < p.value(); ++r) {
                out.residue_sum[r] += tally.residue_sum[r];
                out.residue_sum_sq[r] += tally.residue_sum_sq[r];
            }
    }
    return out;
}

} // namespace

double EstimateResult::mean() const { return mean_of(sum, trials); }
double EstimateResult::std_error() const { return std_error_of(sum, sum_sq, trials); }
double EstimateResult::residue_mean(std::size_t r) const {
    return mean_of(residue_sum.at(r), trials);
}
double EstimateResult::residue_std_error(std::size_t r) const {
    return std_error_of(residue_sum.at(r), residue_sum_sq.at(r), trials);
}

EstimateResult mc_expected_roots(const ExperimentConfig& cfg) {
    return run_mc(cfg, McMode::Total);
}

EstimateResult mc_expected_roots_f0(const ExperimentConfig& cfg) {
    return run_mc(cfg, McMode::F0);
}

EstimateResult mc_finite_field_roots(const ExperimentConfig& cfg) {
    return run_mc(cfg, McMode::FiniteField);
}

EstimateResult mc_haar_per_residue(const ExperimentConfig& cfg) {
    if (!cfg.law.is_haar())
        throw InvalidArgumentError("mc_haar_per_residue requires a Haar law");
    ExperimentConfig with_residues = cfg;
    with_residues.per_residue = true;
    return run_mc(with_residues, McMode::Total);
}

Rational exact_expected_roots_small(const CoefficientLaw& law, PrimeModulus p,
                                    unsigned n) {
    if (law.is_haar())
        throw InvalidArgumentError("exact_expected_roots_small needs finite support");
    if (n == 0)
        throw InvalidArgumentError("degree must be at least 1");
    const auto& atoms = law.atoms();
    BigInt tuples = 1;
    BigInt budget(static_cast<unsigned long>(budgets::kSupportPower));
    for (unsigned i = 0; i < n; ++i) {
        tuples *= static_cast<unsigned long>(atoms.size());
        if (tuples > budget)
            throw BudgetExceededError("exact_expected_roots_small: support^n exceeds budget");
    }
    std::vector<std::size_t> odo(n, 0);
    Rational expectation(0);
    for (;;) {
        std::vector<BigInt> coeffs(n + 1);
        Rational weight(1);
        for (unsigned i = 0; i < n; ++i) {
            coeffs[i] = atoms[odo[i]].value;
            weight *= atoms[odo[i]].prob;
        }
        coeffs[n] = 1;
        if (weight != 0)
            expectation += weight * Rational(count_roots_zp(IntPoly{std::move(coeffs)}, p));
        std::size_t j = 0;
        while (j < n) {
            if (++odo[j] < atoms.size())
                break;
            odo[j] = 0;
            ++j;
        }
        if (j == n)
            break;
    }
    expectation.canonicalize();
    return expectation;
}

FrDistributionReport fr_distribution_exact(const CoefficientLaw& law, PrimeModulus p,
                                           unsigned long r, unsigned k, unsigned long n) {
    if (r == 0 || r >= p.value())
        throw InvalidArgumentError("fr_distribution_exact: r must satisfy 1 <= r < p");
    if (k == 0 || n == 0)
        throw InvalidArgumentError("fr_distribution_exact: k and n must be positive");
    GroupSpec spec(p, k, k); // V = (Z/p^k)^k, budget-checked
    PushforwardLaw law_q = law.pushforward_mod(p, k);
    std::vector<GroupVec> vectors = pascal_vectors(n + 1, k, spec.q());
    GroupVec v_n = vectors.back();
    vectors.pop_back();
    GroupMeasure nu = walk_distribution(spec, vectors, law_q, r % spec.q());

    // deterministic final term v_n r^n, handled as a translation
    unsigned long rq = r % spec.q();
    unsigned long rn = 1;
    for (unsigned long i = 0; i < n; ++i)
        rn = (rn * rq) % spec.q();
    GroupVec t(spec.dim());
    for (unsigned j = 0; j < spec.dim(); ++j)
        t[j] = (v_n[j] * rn) % spec.q();
    nu = translate(nu, t);

    // marginalize the walk cells onto Upsilon_k digit tuples: coordinate i
    // carries f^{(i)}(r) r^i / i!, so digit c_i = x_i r^{-i} mod p^{k-i}
    BigInt pk = prime_power(p, k);
    BigInt rinv_b;
    if (!mpz_invert(rinv_b.get_mpz_t(), BigInt(r).get_mpz_t(), pk.get_mpz_t()))
        throw InternalError("fr_distribution_exact: r not invertible");
    unsigned long rinv = mpz_get_ui(rinv_b.get_mpz_t());

    std::vector<unsigned long> digit_mod(k);   // p^{k-i}
    std::vector<unsigned long> rinv_pow(k);    // r^{-i} mod q
    rinv_pow[0] = 1;
    for (unsigned i = 1; i < k; ++i)
        rinv_pow[i] = (rinv_pow[i - 1] * rinv) % spec.q();
    {
        unsigned long m = spec.q();
        for (unsigned i = 0; i < k; ++i) {
            digit_mod[i] = m;
            m /= p.value();
        }
    }

    // digit tuple -> flat index with c_0 most significant
    unsigned long ups_count = 1;
    for (unsigned i = 0; i < k; ++i)
        ups_count *= digit_mod[i];

    FrDistributionReport report;
    report.upsilon_count = BigInt(ups_count);
    report.probs.assign(ups_count, Rational(0));
    for (std::size_t idx = 0; idx < spec.size(); ++idx) {
        if (nu.weights()[idx] == 0)
            continue;
        GroupVec x = spec.vec(idx);
        unsigned long flat = 0;
        for (unsigned i = 0; i < k; ++i) {
            unsigned long ci = ((x[i] * rinv_pow[i]) % spec.q()) % digit_mod[i];
            flat = flat * digit_mod[i] + ci;
        }
        report.probs[flat] += nu.weights()[idx];
    }

    Rational uniform(1, ups_count);
    Rational check(0);
    report.max_deviation = 0;
    for (const auto& prob : report.probs) {
        check += prob;
        Rational dev = prob - uniform;
        if (dev < 0)
            dev = -dev;
        if (dev > report.max_deviation)
            report.max_deviation = dev;
    }
    if (check != 1)
        throw InternalError("fr_distribution_exact: probabilities do not sum to 1");
    return report;
}

Rational taylor_vector_prob(const CoefficientLaw& law, PrimeModulus p, unsigned long r,
                            const std::vector<unsigned>& moduli,
                            const std::vector<BigInt>& targets, unsigned long n) {
    if (moduli.empty() || moduli.size() != targets.size())
        throw InvalidArgumentError("taylor_vector_prob: moduli/targets shape mismatch");
    if (r == 0 || r >= p.value())
        throw InvalidArgumentError("taylor_vector_prob: r must satisfy 1 <= r < p");
    if (n == 0)
        throw InvalidArgumentError("taylor_vector_prob: n must be positive");
    unsigned d = static_cast<unsigned>(moduli.size());
    unsigned M = *std::max_element(moduli.begin(), moduli.end());
    if (M == 0)
        return Rational(1); // empty condition

    GroupSpec spec(p, M, d);
    PushforwardLaw law_q = law.pushforward_mod(p, M);
    std::vector<GroupVec> vectors = pascal_vectors(n + 1, d, spec.q());
    GroupVec v_n = vectors.back();
    vectors.pop_back();
    unsigned long rq = r % spec.q();
    GroupMeasure nu = walk_distribution(spec, vectors, law_q, rq);
    unsigned long rn = 1;
    for (unsigned long i = 0; i < n; ++i)
        rn = (rn * rq) % spec.q();
    GroupVec t(spec.dim());
    for (unsigned j = 0; j < d; ++j)
        t[j] = (v_n[j] * rn) % spec.q();
    nu = translate(nu, t);

    // S = {x : x_i ≡ γ_i r^i mod p^{m_i}}
    std::vector<unsigned long> mod_i(d), target_i(d);
    unsigned long rpow = 1;
    for (unsigned i = 0; i < d; ++i) {
        unsigned long m = 1;
        for (unsigned j = 0; j < moduli[i]; ++j)
            m *= p.value();
        mod_i[i] = m;
        target_i[i] = (mpz_fdiv_ui(targets[i].get_mpz_t(), m) * (rpow % m)) % m;
        rpow = (rpow * rq) % spec.q();
    }
    Rational result(0);
    for (std::size_t idx = 0; idx < spec.size(); ++idx) {
        if (nu.weights()[idx] == 0)
            continue;
        GroupVec x = spec.vec(idx);
        bool match = true;
        for (unsigned i = 0; i < d; ++i)
            if (moduli[i] > 0 && (x[i] % mod_i[i]) != target_i[i]) {
                match = false;
                break;
            }
        if (match)
            result += nu.weights()[idx];
    }
    result.canonicalize();
    return result;
}

BigInt igusa_solution_count(unsigned n, const BigInt& alpha, PrimeModulus p, unsigned k) {
    if (n < 2)
        throw InvalidArgumentError("igusa_solution_count: n must be at least 2");
    if (k == 0)
        return 1; // empty congruence
    BigInt pk = prime_power(p, k);
    BigInt tuples;
    mpz_pow_ui(tuples.get_mpz_t(), pk.get_mpz_t(), n);
    if (tuples > BigInt(static_cast<unsigned long>(budgets::kIgusaScan)))
        throw BudgetExceededError("igusa_solution_count: p^{kn} exceeds scan budget");

    const std::uint64_t m = mpz_get_ui(pk.get_mpz_t());
    std::uint64_t a = mpz_fdiv_ui(alpha.get_mpz_t(), m);
    // F_alpha = X_1 + 2 a X_2 + ... + (n-1) a^{n-2} X_{n-1} + n a^{n-1}
    std::vector<std::uint64_t> coeff(n, 0); // coeff[j] multiplies X_j; coeff[0] unused
    std::uint64_t apow = 1;
    for (unsigned j = 1; j < n; ++j) {
        coeff[j] = (static_cast<std::uint64_t>(j) % m) * apow % m;
        apow = apow * a % m;
    }
    std::uint64_t constant = (static_cast<std::uint64_t>(n) % m) * apow % m;

    std::vector<std::uint64_t> x(n, 0);
    std::uint64_t value = constant; // running value of F_alpha(x)
    BigInt count = 0;
    for (;;) {
        if (value == 0)
            count += 1;
        unsigned j = 0;
        while (j < n) {
            ++x[j];
            if (j > 0)
                value = (value + coeff[j]) % m;
            if (x[j] < m)
                break;
            // coordinate wraps from m-1 to 0: remove m * coeff[j] ≡ 0, so the
            // running value is already correct; just reset the digit
            x[j] = 0;
            ++j;
        }
        if (j == n)
            break;
    }
    return count;
}

Rational poincare_partial(unsigned n, const BigInt& alpha, PrimeModulus p,
                          const Rational& t, unsigned K) {
    Rational sum(0);
    Rational tpow(1);
    for (unsigned k = 0; k <= K; ++k) {
        BigInt nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), p.value(), static_cast<unsigned long>(n) * k);
        Rational term = Rational(igusa_solution_count(n, alpha, p, k)) / Rational(nk);
        sum += term * tpow;
        tpow *= t;
    }
    sum.canonicalize();
    return sum;
}

double theorem1_tolerance(double std_error, unsigned n) {
    return 3.0 * std_error + 2.0 * std::pow(static_cast<double>(n), -0.25);
}

double rational_roots_tolerance(double std_error, unsigned n) {
    return 3.0 * std_error + 2.0 * std::pow(static_cast<double>(n), -0.3);
}

std::optional<Rational> known_total_target(const CoefficientLaw& law, PrimeModulus p) {
    if (law.is_haar())
        return Rational(p.value(), p.value() + 1);
    if (law.satisfies_zero_conditional(p)) {
        Rational t = law.prob_zero() + Rational(p.value() - 1, p.value() + 1);
        t.canonicalize();
        return t;
    }
    return std::nullopt;
}

std::optional<Rational> known_f0_target(const CoefficientLaw& law, PrimeModulus p) {
    if (law.is_haar())
        return Rational(1, p.value() + 1);
    if (law.satisfies_zero_conditional(p))
        return law.prob_zero();
    return std::nullopt;
}

Rational finite_field_target(const CoefficientLaw& law, PrimeModulus p) {
    PushforwardLaw lp = law.pushforward_mod(p, 1);
    Rational t = lp.prob[0] + Rational(p.value() - 1, p.value());
    t.canonicalize();
    return t;
}

std::optional<Rational> f0_upper_bound(const CoefficientLaw& law, PrimeModulus p) {
    PushforwardLaw lp = law.pushforward_mod(p, 1);
    Rational q = lp.prob[0];
    if (q == 1)
        return std::nullopt;
    Rational bound = q / (Rational(1) - q);
    bound.canonicalize();
    return bound;
}

} // namespace padicroots
