#ifndef PADICROOTS_RATIONALROOTS_HPP
#define PADICROOTS_RATIONALROOTS_HPP

#include <vector>

#include "padicroots/experiments.hpp"
#include "padicroots/intpoly.hpp"

namespace padicroots {

// Sorted positive divisors of |n|, n != 0, by trial division.
std::vector<BigInt> divisors(const BigInt& n);

// d(n) for n >= 1.
long divisor_count(const BigInt& n);

// All integer roots of a monic integer polynomial, ascending. For monic
// integer polynomials this is the full rational root set: strip the X^v
// factor (root 0 iff v >= 1), then test the signed divisors of the new
// constant term.
std::vector<BigInt> integer_roots(const IntPoly& f);

// Sample mean of the integer-root count of random monic polynomials drawn
// from a finite integer-supported law.
EstimateResult mc_rational_root_count(const CoefficientLaw& law, unsigned n,
                                      long trials, std::uint64_t seed,
                                      unsigned threads = 1);

} // namespace padicroots

#endif
