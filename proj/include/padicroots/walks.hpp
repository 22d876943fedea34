#ifndef PADICROOTS_WALKS_HPP
#define PADICROOTS_WALKS_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "padicroots/laws.hpp"

namespace padicroots {

// Entries of a vector in V = (Z/qZ)^d, each in [0, q).
using GroupVec = std::vector<unsigned long>;

// The finite abelian group V = (Z/qZ)^d with q = p^M. Dense indexing is
// little-endian mixed radix: index = sum entries[j] q^j.
class GroupSpec {
  public:
    GroupSpec(PrimeModulus p, unsigned M, unsigned dim);

    unsigned long prime() const { return p_; }
    unsigned exponent() const { return M_; }
    unsigned dim() const { return dim_; }
    unsigned long q() const { return q_; }
    std::size_t size() const { return size_; }

    std::size_t index(const GroupVec& v) const;
    GroupVec vec(std::size_t index) const;

    bool operator==(const GroupSpec&) const = default;

  private:
    unsigned long p_;
    unsigned M_;
    unsigned dim_;
    unsigned long q_;
    std::size_t size_;
};

// Probability measure on V with exact rational weights.
class GroupMeasure {
  public:
    explicit GroupMeasure(GroupSpec spec);
    static GroupMeasure dirac(GroupSpec spec, const GroupVec& at);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<Rational>& weights() const { return w_; }
    std::vector<Rational>& weights() { return w_; }
    const Rational& at(const GroupVec& v) const { return w_[spec_.index(v)]; }

    Rational total_mass() const;

  private:
    GroupSpec spec_;
    std::vector<Rational> w_;
};

// Formal dot product u.w mod q.
unsigned long dot(const GroupSpec& spec, const GroupVec& u, const GroupVec& w);

// Number of step vectors v_i with <u, v_i> != 0; u must be nonzero.
unsigned long u_weight(const GroupSpec& spec, const GroupVec& u,
                       const std::vector<GroupVec>& vectors);

// sigma = min over u != 0 of the u-weight, by exhaustive scan over V.
unsigned long minimal_weight(const GroupSpec& spec,
                             const std::vector<GroupVec>& vectors);

// Pascal vectors v_i = (binom(i,0), ..., binom(i,d-1)) mod q, i < n.
std::vector<GroupVec> pascal_vectors(unsigned long n, unsigned dim, unsigned long q);

// tau = 1 - sum_x mu_p(x)^2 of a mod-p pushforward (law.m must be 1).
Rational tau(const PushforwardLaw& mod_p_law);

// mu.delta_w: pushforward of the scalar law onto the line through w.
GroupMeasure step_measure(const GroupSpec& spec, const PushforwardLaw& law,
                          const GroupVec& w);

GroupMeasure convolve(const GroupMeasure& a, const GroupMeasure& b);

// Measure of x shifted to x + t.
GroupMeasure translate(const GroupMeasure& mu, const GroupVec& t);

// nu_r = mu.delta_{v_0} * mu.delta_{v_1 r} * ... * mu.delta_{v_{n-1} r^{n-1}}.
// r must be a unit mod q.
GroupMeasure walk_distribution(const GroupSpec& spec,
                               const std::vector<GroupVec>& vectors,
                               const PushforwardLaw& law, unsigned long r);

// Full transform u -> sum_w mu(w) zeta^{-<u,w>}, zeta = exp(2 pi i / q).
// Floating point; entries carry ~1e-12 error at desk sizes.
std::vector<std::complex<double>> fourier(const GroupMeasure& mu);

struct FourierDecayRow {
    std::size_t u_index = 0;
    unsigned long weight = 0;
    double bound = 0;
    double observed = 0;
    double slack = 0;
};

struct FourierDecayReport {
    std::vector<FourierDecayRow> rows; // all u != 0
    double max_slack = 0;              // over u with positive weight
    double tau_value = 0;
    unsigned long sigma = 0;
};

// Per-u slack |nu_r^(u)| - exp(-tau * omega_u / q^2); the mixing lemma says
// every slack is <= 0 up to Fourier round-off.
FourierDecayReport check_fourier_decay(const GroupSpec& spec,
                                       const std::vector<GroupVec>& vectors,
                                       const PushforwardLaw& law, unsigned long r);

// sup over cells of |mu(u) - 1/#V|, exact.
Rational distance_to_uniform(const GroupMeasure& mu);

} // namespace padicroots

#endif
