#ifndef PADICROOTS_UPSILON_HPP
#define PADICROOTS_UPSILON_HPP

#include <vector>

#include "padicroots/laws.hpp"
#include "padicroots/padic.hpp"

namespace padicroots {

// Element of Upsilon_k: the digit tuple (c_0, ..., c_{k-1}) with
// c_i in [0, p^{k-i}); the induced polynomial mod p^k is sum c_i p^i X^i.
struct UpsilonElement {
    unsigned long p = 0;
    unsigned k = 0;
    std::vector<BigInt> digits;
};

// #Upsilon_k = p^{k(k+1)/2}.
BigInt upsilon_size(PrimeModulus p, unsigned k);

ModPoly to_modpoly(const UpsilonElement& u);

// True iff the i-th coefficient of g is divisible by p^i and deg g < k.
bool upsilon_membership(const ModPoly& g);

// Each digit independently uniform on its range.
UpsilonElement sample_upsilon(PrimeModulus p, unsigned k, RngStream& stream);

// Lexicographic enumeration (c_0 most significant). Budget-checked at
// construction; next() returns false once exhausted.
class UpsilonRange {
  public:
    UpsilonRange(PrimeModulus p, unsigned k);
    bool next(UpsilonElement& out);

  private:
    unsigned long p_;
    unsigned k_;
    std::vector<BigInt> limits_; // p^{k-i}
    std::vector<BigInt> digits_;
    bool started_ = false;
    bool done_ = false;
};

// Whether some x mod p^k has g(x) ≡ g'(x) ≡ 0 (the event M_g).
bool has_non_simple_root(const ModPoly& g);

// Exact E[H_k(g)] for g uniform on Upsilon_{2k}, by full enumeration.
Rational exact_mean_Hk_over_upsilon(PrimeModulus p, unsigned k);

// Exact Pr(M_g) for g uniform on Upsilon_k, by full enumeration.
Rational exact_prob_non_simple(PrimeModulus p, unsigned k);

} // namespace padicroots

#endif
