#ifndef PADICROOTS_LAWS_HPP
#define PADICROOTS_LAWS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "padicroots/intpoly.hpp"
#include "padicroots/padic.hpp"

namespace padicroots {

// Deterministic substreamable generator. The stream state is
// SplitMix64-mixed from master_seed XOR stream_index and then advanced with
// the standard SplitMix64 golden-gamma sequence, so identical (seed, index)
// produce identical byte streams independent of platform or worker layout.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_index() const { return index_; }

    std::uint64_t next();
    // Uniform on [0, m), rejection sampled: no modulo bias.
    std::uint64_t uniform(std::uint64_t m);
    BigInt uniform_big(const BigInt& m);
    // Child stream fully determined by this stream's identity and j; child
    // draws are independent of how much the parent consumed.
    RngStream substream(std::uint64_t j) const;

  private:
    std::uint64_t master_;
    std::uint64_t index_;
    std::uint64_t state_;
};

// Exact residue probabilities of a coefficient law pushed forward to
// Z/qZ with q = p^m.
struct PushforwardLaw {
    unsigned long p = 0;
    unsigned m = 0;
    unsigned long q = 1;
    std::vector<Rational> prob; // index = residue, size q
};

// Further reduction mod p^m2 (m2 <= law.m); sums residue masses.
PushforwardLaw reduce_pushforward(const PushforwardLaw& law, unsigned m2);

// Distribution of the i.i.d. coefficients: finite support on integers, or
// Haar on Z_p materialized at a fixed digit precision K (samples are uniform
// integers in [0, p^K)).
class CoefficientLaw {
  public:
    struct Atom {
        BigInt value;
        Rational prob;
    };

    static CoefficientLaw finite(std::vector<Atom> atoms);
    static CoefficientLaw rademacher();
    static CoefficientLaw bernoulli01();
    static CoefficientLaw uniform_mod_p(PrimeModulus p);
    static CoefficientLaw haar(unsigned precision_digits);

    // Law spec strings: "rademacher", "bernoulli01", "uniform0p", "haar:K",
    // "finite:v1=p1,v2=p2,..." with rational probabilities a/b. uniform0p
    // needs the ambient prime.
    static CoefficientLaw parse(std::string_view text, unsigned long p);

    const std::string& text() const { return text_; }
    bool is_haar() const { return haar_precision_ > 0; }
    unsigned haar_precision() const;
    const std::vector<Atom>& atoms() const;
    bool is_integer_supported() const { return !is_haar(); }

    PushforwardLaw pushforward_mod(PrimeModulus p, unsigned m) const;
    Rational prob_zero() const;
    // True when every support value divisible by p is 0 (vacuously true if
    // none is); false for Haar.
    bool satisfies_zero_conditional(PrimeModulus p) const;
    // True when the pushforward mod p has at least two atoms.
    bool is_mod_p_nonconstant(PrimeModulus p) const;

    BigInt sample_value(PrimeModulus p, RngStream& stream) const;
    // Monic degree-n polynomial; coefficient i draws from substream i of the
    // trial stream, so trial layouts cannot perturb each other.
    IntPoly sample_poly(PrimeModulus p, unsigned n, const RngStream& trial_stream) const;

  private:
    CoefficientLaw() = default;

    std::vector<Atom> atoms_;
    unsigned haar_precision_ = 0; // 0 means finite support
    std::string text_;
    // Exact finite sampling: thresholds over the common denominator.
    BigInt denom_ = 1;
    std::vector<BigInt> cumulative_;
};

} // namespace padicroots

#endif
