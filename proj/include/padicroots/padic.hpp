#ifndef PADICROOTS_PADIC_HPP
#define PADICROOTS_PADIC_HPP

#include <optional>
#include <vector>

#include "padicroots/intpoly.hpp"

namespace padicroots {

// A validated prime, the fixed p of every p-adic computation.
class PrimeModulus {
  public:
    explicit PrimeModulus(unsigned long p);
    unsigned long value() const { return p_; }
    bool operator==(const PrimeModulus&) const = default;

  private:
    unsigned long p_;
};

BigInt prime_power(PrimeModulus p, unsigned k);

// Largest t with p^t | n; nullopt encodes +infinity (n = 0).
std::optional<unsigned long> valuation(const BigInt& n, PrimeModulus p);

// Polynomial with coefficients canonically reduced into [0, p^k). Trailing
// zero residues are trimmed, so degree() is the degree of f mod p^k
// (-1 when f ≡ 0 mod p^k).
class ModPoly {
  public:
    ModPoly(PrimeModulus p, unsigned k, const std::vector<BigInt>& coeffs);
    static ModPoly reduce(const IntPoly& f, PrimeModulus p, unsigned k);

    PrimeModulus prime() const { return p_; }
    unsigned precision() const { return k_; }
    const BigInt& modulus() const { return modulus_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    BigInt eval(const BigInt& x) const;
    ModPoly derivative() const;
    ModPoly reduced_to(unsigned j) const; // j <= k
    IntPoly lift() const;                 // canonical integer lift

    bool operator==(const ModPoly&) const = default;

  private:
    PrimeModulus p_;
    unsigned k_;
    BigInt modulus_;
    std::vector<BigInt> coeffs_;
};

enum class RootKind { Simple, NonSimple };

struct RootClassification {
    BigInt residue;
    RootKind kind;
    bool operator==(const RootClassification&) const = default;
};

// All residues x mod p^k with g(x) ≡ 0, ascending, classified Simple
// (g'(x) nonzero mod p^k) or NonSimple.
std::vector<RootClassification> classify_roots_mod_pk(const ModPoly& g);

struct HenselianStatus {
    bool henselian = false;
    bool primitive = false;
};

// x mod p^k is k-Henselian when g'(x) is nonzero mod p^k and some lift
// y mod p^{2k} has g(y) ≡ 0 mod p^{2k}; primitive when additionally
// g'(x) ≡ 0 mod p^{k-1}. The ModPoly overloads take g at precision 2k,
// which determines the answer.
HenselianStatus is_k_henselian(const ModPoly& g, unsigned k, const BigInt& x);
HenselianStatus is_k_henselian(const IntPoly& f, PrimeModulus p, unsigned k,
                               const BigInt& x);

// H_k: number of k-Henselian residues mod p^k.
long henselian_count(const ModPoly& g, unsigned k);
long henselian_count(const IntPoly& f, PrimeModulus p, unsigned k);

// H~_m: number of primitive m-Henselian residues mod p^m.
long primitive_henselian_count(const ModPoly& g, unsigned m);
long primitive_henselian_count(const IntPoly& f, PrimeModulus p, unsigned m);

struct RootCountDiagnostics {
    // p-adic digits of the input the recursion had to read. Haar-sampled
    // trials are biased when this reaches the sampling precision.
    unsigned precision_consumed = 0;
    unsigned max_depth = 0;
};

// Exact number of distinct roots of f in Z_p. Recursive descent over the
// squarefree part; depth is asserted against valuation(discriminant) + 1.
long count_roots_zp(const IntPoly& f, PrimeModulus p);
long count_roots_zp(const IntPoly& f, PrimeModulus p, RootCountDiagnostics& diag);

// Number of roots of f in r + pZ_p (equivalently of f(r + pX) in Z_p).
long count_roots_residue(const IntPoly& f, PrimeModulus p, unsigned long r);
long count_roots_residue(const IntPoly& f, PrimeModulus p, unsigned long r,
                         RootCountDiagnostics& diag);

// All residue classes at once; entry r is count_roots_residue(f, p, r).
std::vector<long> count_roots_by_residue(const IntPoly& f, PrimeModulus p);
std::vector<long> count_roots_by_residue(const IntPoly& f, PrimeModulus p,
                                         RootCountDiagnostics& diag);

// Independent certification counter: smallest k such that the squarefree
// part g is nonzero mod p^k and has no non-simple root mod p^k, then H_k(g).
// max_k = 0 derives the cap from the enumeration budget; exceeding the cap
// throws (raise it, never guess).
long count_roots_zp_certified(const IntPoly& f, PrimeModulus p, unsigned max_k = 0);

// Newton lift of a k0-Henselian residue x0 to the unique root of f in
// x0 + p^{k0} Z_p, returned mod p^target. Validates the hypotheses
// (f'(x0) nonzero mod p^{k0}, some lift y mod p^{2k0} with
// f(y) ≡ 0 mod p^{2k0}) and errors when they fail.
BigInt hensel_lift(const IntPoly& f, PrimeModulus p, const BigInt& x0,
                   unsigned k0, unsigned target);

// Residues mod p^target of all distinct Z_p roots of f, ascending. Each
// witness w satisfies f(w) ≡ 0 mod p^target.
std::vector<BigInt> root_witnesses(const IntPoly& f, PrimeModulus p, unsigned target);

} // namespace padicroots

#endif
