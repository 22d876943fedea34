#ifndef PADICROOTS_EXPERIMENTS_HPP
#define PADICROOTS_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "padicroots/laws.hpp"
#include "padicroots/walks.hpp"

namespace padicroots {

// Monte Carlo tallies. Per-trial counts are small integers, so the sums are
// exact and the derived statistics are identical for any worker layout.
struct EstimateResult {
    long trials = 0;
    std::uint64_t seed = 0;
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    long max_count = 0;
    std::vector<std::int64_t> residue_sum;    // filled when per-residue requested
    std::vector<std::int64_t> residue_sum_sq;
    long audited = 0;
    long audit_skipped = 0; // certification hit its budget; counted, not fatal
    unsigned precision_consumed = 0;

    double mean() const;
    double std_error() const;
    double residue_mean(std::size_t r) const;
    double residue_std_error(std::size_t r) const;
};

struct ExperimentConfig {
    CoefficientLaw law;
    unsigned long p = 3;
    unsigned n = 1; // degree
    long trials = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    // Certified re-count every audit_interval-th trial (0 disables); a
    // disagreement aborts the run.
    long audit_interval = 100;
    bool per_residue = false;
};

// Sample mean of the Z_p root count of monic degree-n polynomials, with the
// per-residue breakdown when requested; the per-trial partition identity is
// asserted on every trial.
EstimateResult mc_expected_roots(const ExperimentConfig& cfg);

// Same sampling, counting roots of f_0(X) = f(pX) in Z_p (equivalently the
// roots of f in pZ_p).
EstimateResult mc_expected_roots_f0(const ExperimentConfig& cfg);

// Distinct roots of f mod p, by residue scan.
EstimateResult mc_finite_field_roots(const ExperimentConfig& cfg);

// Haar-only wrapper of mc_expected_roots with the per-residue breakdown on.
EstimateResult mc_haar_per_residue(const ExperimentConfig& cfg);

// Exact expectation of the root count over every coefficient tuple of a
// finite-support law (brute-force oracle; |support|^n budget-checked).
Rational exact_expected_roots_small(const CoefficientLaw& law, PrimeModulus p,
                                    unsigned n);

struct FrDistributionReport {
    // probabilities indexed by the Upsilon_k digit odometer (c_0 most
    // significant digit)
    std::vector<Rational> probs;
    Rational max_deviation;   // sup |prob - 1/#Upsilon_k|
    BigInt upsilon_count;
};

// Exact distribution of f_r mod p^k over Upsilon_k via the coefficient walk
// with Pascal vectors plus the deterministic v_n r^n translation.
FrDistributionReport fr_distribution_exact(const CoefficientLaw& law, PrimeModulus p,
                                           unsigned long r, unsigned k, unsigned long n);

// Exact probability that f^{(i)}(r)/i! ≡ γ_i mod p^{m_i} for i < d.
Rational taylor_vector_prob(const CoefficientLaw& law, PrimeModulus p, unsigned long r,
                            const std::vector<unsigned>& moduli,
                            const std::vector<BigInt>& targets, unsigned long n);

// N_k: solutions of F_alpha ≡ 0 mod p^k in (Z/p^k)^n for the derivative form
// F_alpha = X_1 + 2 alpha X_2 + ... + n alpha^{n-1}, by exhaustive scan.
BigInt igusa_solution_count(unsigned n, const BigInt& alpha, PrimeModulus p, unsigned k);

// Partial Poincaré series: sum_{k<=K} p^{-nk} N_k t^k, exact.
Rational poincare_partial(unsigned n, const BigInt& alpha, PrimeModulus p,
                          const Rational& t, unsigned K);

// ---------------------------------------------------------------------------
// Tolerance policy for asymptotic claims (artifact decision, reported with
// every estimate): 3*stderr plus an explicit finite-n allowance.

double theorem1_tolerance(double std_error, unsigned n);       // + 2 n^{-1/4}
double rational_roots_tolerance(double std_error, unsigned n); // + 2 n^{-3/10}

// Known closed-form targets where the paper supplies them.
std::optional<Rational> known_total_target(const CoefficientLaw& law, PrimeModulus p);
std::optional<Rational> known_f0_target(const CoefficientLaw& law, PrimeModulus p);
Rational finite_field_target(const CoefficientLaw& law, PrimeModulus p);
// q/(1-q) with q = Pr(xi ≡ 0 mod p); nullopt when q = 1.
std::optional<Rational> f0_upper_bound(const CoefficientLaw& law, PrimeModulus p);

} // namespace padicroots

#endif
