#include "padicroots/padic.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "padicroots/budgets.hpp"

namespace padicroots {

namespace {

bool is_prime_u64(unsigned long n) {
    if (n < 2)
        return false;
    for (unsigned long d : {2ul, 3ul, 5ul, 7ul})
        if (n % d == 0)
            return n == d;
    for (unsigned long d = 11; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

BigInt mod_reduce(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt eval_mod(const std::vector<BigInt>& coeffs, const BigInt& x, const BigInt& m) {
    BigInt acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc *= x;
        acc += coeffs[i];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Squarefreeness certificate: gcd(f mod Q, f' mod Q) = 1 with the degree of f
// preserved implies disc(f) != 0 over Z. Q are fixed word-size primes; an
// inconclusive answer falls back to the exact squarefree part.

constexpr std::uint64_t kCertPrimes[] = {2305843009213693951ull,  // 2^61 - 1
                                         4611686018427387847ull}; // 2^62 - 57

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

void trim_u64(std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

bool gcd_mod_q_is_constant(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                           std::uint64_t q) {
    trim_u64(a);
    trim_u64(b);
    while (!b.empty()) {
        std::uint64_t inv = powmod_u64(b.back(), q - 2, q);
        while (a.size() >= b.size()) {
            std::uint64_t c = mulmod_u64(a.back(), inv, q);
            std::size_t off = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t t = mulmod_u64(c, b[j], q);
                a[off + j] = (a[off + j] >= t) ? a[off + j] - t : a[off + j] + q - t;
            }
            trim_u64(a); // leading term cancels
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return a.size() == 1;
}

bool certified_squarefree(const IntPoly& f) {
    long n = f.degree();
    if (n <= 1)
        return true;
    for (std::uint64_t q : kCertPrimes) {
        std::vector<std::uint64_t> a(n + 1);
        for (long i = 0; i <= n; ++i)
            a[i] = mpz_fdiv_ui(f.coeff(i).get_mpz_t(), q);
        if (a.back() == 0)
            continue; // degree dropped, certificate unusable
        std::vector<std::uint64_t> b(n);
        for (long i = 1; i <= n; ++i)
            b[i - 1] = mulmod_u64(a[i], static_cast<std::uint64_t>(i), q);
        if (gcd_mod_q_is_constant(a, b, q))
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Root-counting descent. Polynomials are carried as residues mod p^prec; all
// branch decisions are certified exact under the truncation (a ladder of
// restarts raises the precision in the rare case it runs out).

struct NeedMorePrecision {};

struct Frame {
    std::vector<BigInt> coeffs; // in [0, p^prec), trailing zeros trimmed
    unsigned prec;
};

constexpr unsigned kInitialPrecision = 32;
constexpr unsigned kMaxPrecision = 1u << 20;
constexpr unsigned kLazyCapDepth = 12;
constexpr int kNewtonMaxIter = 64;

struct DescentCtx {
    PrimeModulus p;
    const IntPoly* cap_source; // original input; the depth cap comes from it
    std::optional<unsigned long> depth_cap;
    unsigned W = 0;
    std::vector<BigInt> ppow; // p^0 .. p^W
    unsigned max_depth = 0;
    unsigned consumed = 0;
    bool collect = false;
    unsigned target = 0;
    std::vector<BigInt> witnesses;
};

void ensure_depth_cap(DescentCtx& ctx) {
    if (ctx.depth_cap)
        return;
    IntPoly sf = squarefree_part(*ctx.cap_source);
    if (sf.degree() < 1)
        throw InternalError("descent recursed on a constant polynomial");
    BigInt disc = discriminant(sf);
    auto v = valuation(disc, ctx.p);
    if (!v)
        throw InternalError("squarefree part has zero discriminant");
    ctx.depth_cap = *v + 1;
}

// Taylor coefficients h^{(i)}(r)/i! mod m for i < limit, by repeated
// synthetic division by (X - r).
std::vector<BigInt> taylor_prefix(std::vector<BigInt> a, unsigned long r,
                                  const BigInt& m, std::size_t limit) {
    std::vector<BigInt> out;
    out.reserve(limit);
    while (out.size() < limit && !a.empty()) {
        if (a.size() == 1) {
            out.push_back(a[0]);
            a.clear();
            break;
        }
        std::size_t d = a.size() - 1;
        std::vector<BigInt> quot(d);
        quot[d - 1] = a[d];
        for (std::size_t j = d - 1; j >= 1; --j) {
            quot[j - 1] = a[j] + r * quot[j];
            mpz_fdiv_r(quot[j - 1].get_mpz_t(), quot[j - 1].get_mpz_t(), m.get_mpz_t());
        }
        BigInt rem = a[0] + r * quot[0];
        out.push_back(mod_reduce(rem, m));
        a = std::move(quot);
    }
    while (out.size() < limit)
        out.push_back(0);
    return out;
}

// Child polynomial h(r + pX) / p^v at precision prec - v.
Frame shift_child(const DescentCtx& ctx, const Frame& h, unsigned long r) {
    const BigInt& m = ctx.ppow[h.prec];
    std::size_t limit = std::min<std::size_t>(h.coeffs.size(), h.prec);
    std::vector<BigInt> c = taylor_prefix(h.coeffs, r, m, limit);
    unsigned long v = h.prec;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        c[i] = mod_reduce(c[i] * ctx.ppow[i], m);
        if (c[i] == 0)
            continue;
        BigInt rest;
        mp_bitcnt_t val = mpz_remove(rest.get_mpz_t(), c[i].get_mpz_t(),
                                     ctx.ppow[1].get_mpz_t());
        v = std::min<unsigned long>(v, val);
    }
    if (v >= h.prec)
        throw NeedMorePrecision{}; // shifted polynomial vanished mod p^prec
    Frame child;
    child.prec = h.prec - static_cast<unsigned>(v);
    const BigInt& cm = ctx.ppow[child.prec];
    child.coeffs.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), c[i].get_mpz_t(), ctx.ppow[v].get_mpz_t());
        child.coeffs[i] = mod_reduce(q, cm);
    }
    while (!child.coeffs.empty() && child.coeffs.back() == 0)
        child.coeffs.pop_back();
    return child;
}

std::vector<std::uint64_t> reduce_frame_mod_p(const Frame& h, unsigned long p) {
    std::vector<std::uint64_t> out(h.coeffs.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mpz_fdiv_ui(h.coeffs[i].get_mpz_t(), p);
    return out;
}

std::uint64_t eval_u64(const std::vector<std::uint64_t>& coeffs, std::uint64_t x,
                       std::uint64_t m) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = (acc * x + coeffs[i]) % m;
    return acc;
}

// Newton refinement of a simple root r of h mod p up to the full frame
// precision; the derivative is a unit so convergence is quadratic.
BigInt refine_simple_root(const DescentCtx& ctx, const Frame& h, unsigned long r) {
    const BigInt& m = ctx.ppow[h.prec];
    std::vector<BigInt> deriv(h.coeffs.size() > 1 ? h.coeffs.size() - 1 : 0);
    for (std::size_t i = 1; i < h.coeffs.size(); ++i)
        deriv[i - 1] = mod_reduce(BigInt(static_cast<unsigned long>(i)) * h.coeffs[i], m);
    BigInt t = r;
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        BigInt ht = eval_mod(h.coeffs, t, m);
        if (ht == 0)
            return t;
        BigInt hpt = eval_mod(deriv, t, m);
        BigInt inv;
        if (!mpz_invert(inv.get_mpz_t(), hpt.get_mpz_t(), m.get_mpz_t()))
            throw InternalError("simple-root derivative not invertible");
        t = mod_reduce(t - ht * inv, m);
    }
    throw InternalError("Newton refinement did not converge");
}

void record_witness(DescentCtx& ctx, const Frame& h, unsigned long r,
                    const BigInt& base, unsigned scale) {
    if (scale + h.prec < ctx.target)
        throw NeedMorePrecision{};
    BigInt t = refine_simple_root(ctx, h, r);
    BigInt x = mod_reduce(base + ctx.ppow[scale] * t, ctx.ppow[ctx.target]);
    ctx.witnesses.push_back(std::move(x));
}

long count_frame(DescentCtx& ctx, const Frame& h, const BigInt& base, unsigned scale,
                 unsigned depth) {
    ctx.max_depth = std::max(ctx.max_depth, depth);
    ctx.consumed = std::max(ctx.consumed, ctx.W - h.prec + 1);
    if (depth >= kLazyCapDepth)
        ensure_depth_cap(ctx);
    if (ctx.depth_cap && depth > *ctx.depth_cap)
        throw InternalError("root-counting recursion exceeded its discriminant depth cap");

    const unsigned long p = ctx.p.value();
    std::vector<std::uint64_t> hp = reduce_frame_mod_p(h, p);
    std::vector<std::uint64_t> dp(hp.size() > 1 ? hp.size() - 1 : 0);
    for (std::size_t i = 1; i < hp.size(); ++i)
        dp[i - 1] = (hp[i] * (i % p)) % p;
    long total = 0;
    for (unsigned long r = 0; r < p; ++r) {
        if (eval_u64(hp, r, p) != 0)
            continue;
        if (eval_u64(dp, r, p) != 0) {
            ++total;
            if (ctx.collect)
                record_witness(ctx, h, r, base, scale);
        } else {
            Frame child = shift_child(ctx, h, r);
            BigInt child_base = base + ctx.ppow[scale] * r;
            total += count_frame(ctx, child, child_base, scale + 1, depth + 1);
        }
    }
    return total;
}

IntPoly strip_p_content(const IntPoly& f, PrimeModulus p) {
    BigInt pb(p.value());
    unsigned long vmin = ~0ul;
    for (const auto& c : f.coeffs()) {
        if (c == 0)
            continue;
        BigInt rest;
        mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), c.get_mpz_t(), pb.get_mpz_t());
        vmin = std::min<unsigned long>(vmin, v);
        if (vmin == 0)
            return f;
    }
    BigInt div;
    mpz_pow_ui(div.get_mpz_t(), pb.get_mpz_t(), vmin);
    std::vector<BigInt> out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        mpz_divexact(out[i].get_mpz_t(), f.coeffs()[i].get_mpz_t(), div.get_mpz_t());
    }
    return IntPoly{std::move(out)};
}

struct DescentOutput {
    std::vector<long> per_residue;
    std::vector<BigInt> witnesses;
    RootCountDiagnostics diag;
};

DescentOutput run_descent(const IntPoly& f, PrimeModulus p, bool collect,
                          unsigned target,
                          std::optional<unsigned long> only_residue = std::nullopt) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    const unsigned long pv = p.value();
    IntPoly base = strip_p_content(f, p);
    if (!certified_squarefree(base))
        base = squarefree_part(f); // primitive, so no p-content either
    unsigned start = kInitialPrecision;
    if (collect)
        while (start < target + 8)
            start *= 2;
    for (unsigned W = start; W <= kMaxPrecision; W *= 2) {
        DescentCtx ctx{p, &f, std::nullopt, W, {}, 0, 0, collect, target, {}};
        ctx.ppow.resize(W + 1);
        ctx.ppow[0] = 1;
        for (unsigned j = 1; j <= W; ++j)
            ctx.ppow[j] = ctx.ppow[j - 1] * pv;
        Frame top;
        top.prec = W;
        top.coeffs.resize(base.coeffs().size());
        for (std::size_t i = 0; i < top.coeffs.size(); ++i)
            top.coeffs[i] = mod_reduce(base.coeffs()[i], ctx.ppow[W]);
        while (!top.coeffs.empty() && top.coeffs.back() == 0)
            top.coeffs.pop_back();

        try {
            std::vector<std::uint64_t> hp = reduce_frame_mod_p(top, pv);
            std::vector<std::uint64_t> dp(hp.size() > 1 ? hp.size() - 1 : 0);
            for (std::size_t i = 1; i < hp.size(); ++i)
                dp[i - 1] = (hp[i] * (i % pv)) % pv;
            DescentOutput out;
            out.per_residue.assign(pv, 0);
            unsigned long r_begin = only_residue ? *only_residue : 0;
            unsigned long r_end = only_residue ? *only_residue + 1 : pv;
            for (unsigned long r = r_begin; r < r_end; ++r) {
                if (eval_u64(hp, r, pv) != 0)
                    continue;
                if (eval_u64(dp, r, pv) != 0) {
                    out.per_residue[r] = 1;
                    if (collect)
                        record_witness(ctx, top, r, BigInt(0), 0);
                } else {
                    Frame child = shift_child(ctx, top, r);
                    out.per_residue[r] = count_frame(ctx, child, BigInt(r), 1, 1);
                }
            }
            out.witnesses = std::move(ctx.witnesses);
            out.diag.precision_consumed = std::max(ctx.consumed, 1u);
            out.diag.max_depth = ctx.max_depth;
            return out;
        } catch (const NeedMorePrecision&) {
            continue;
        }
    }
    throw InternalError("root-counting working precision runaway");
}

std::uint64_t checked_scan_size(PrimeModulus p, unsigned k, const char* what) {
    BigInt size = prime_power(p, k);
    if (size > BigInt(static_cast<unsigned long>(budgets::kResidueScan)))
        throw BudgetExceededError(std::string(what) + ": residue scan exceeds budget");
    return static_cast<std::uint64_t>(mpz_get_ui(size.get_mpz_t()));
}

std::vector<std::uint64_t> coeffs_u64(const ModPoly& g) {
    std::vector<std::uint64_t> out(g.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mpz_get_ui(g.coeffs()[i].get_mpz_t());
    return out;
}

// Marks residues x mod p^k that admit a lift y mod p^{2k} with
// g(y) ≡ 0 mod p^{2k}. g must carry precision 2k.
std::vector<bool> liftable_marks(const ModPoly& g, std::uint64_t pk,
                                 std::uint64_t p2k) {
    std::vector<std::uint64_t> c = coeffs_u64(g);
    std::vector<bool> marks(pk, false);
    for (std::uint64_t y = 0; y < p2k; ++y)
        if (eval_u64(c, y, p2k) == 0)
            marks[y % pk] = true;
    return marks;
}

void require_precision_2k(const ModPoly& g, unsigned k, const char* what) {
    if (g.precision() != 2 * k)
        throw InvalidArgumentError(std::string(what) +
                                   ": polynomial must be given mod p^{2k}");
}

} // namespace

PrimeModulus::PrimeModulus(unsigned long p) : p_(p) {
    if (p >= (1ul << 31))
        throw InvalidArgumentError("prime exceeds supported range");
    if (!is_prime_u64(p))
        throw InvalidArgumentError("modulus " + std::to_string(p) + " is not prime");
}

BigInt prime_power(PrimeModulus p, unsigned k) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), p.value(), k);
    return out;
}

std::optional<unsigned long> valuation(const BigInt& n, PrimeModulus p) {
    if (n == 0)
        return std::nullopt;
    BigInt rest, pb(p.value());
    mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pb.get_mpz_t());
    return static_cast<unsigned long>(v);
}

ModPoly::ModPoly(PrimeModulus p, unsigned k, const std::vector<BigInt>& coeffs)
    : p_(p), k_(k), modulus_(prime_power(p, k)) {
    if (k == 0)
        throw InvalidArgumentError("ModPoly precision must be positive");
    coeffs_.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs_[i] = mod_reduce(coeffs[i], modulus_);
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

ModPoly ModPoly::reduce(const IntPoly& f, PrimeModulus p, unsigned k) {
    return ModPoly(p, k, f.coeffs());
}

BigInt ModPoly::eval(const BigInt& x) const {
    return eval_mod(coeffs_, x, modulus_);
}

ModPoly ModPoly::derivative() const {
    std::vector<BigInt> d(coeffs_.size() > 1 ? coeffs_.size() - 1 : 0);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = BigInt(static_cast<unsigned long>(i)) * coeffs_[i];
    return ModPoly(p_, k_, d);
}

ModPoly ModPoly::reduced_to(unsigned j) const {
    if (j > k_)
        throw InvalidArgumentError("cannot raise ModPoly precision by reduction");
    return ModPoly(p_, j, coeffs_);
}

IntPoly ModPoly::lift() const {
    return IntPoly{coeffs_};
}

std::vector<RootClassification> classify_roots_mod_pk(const ModPoly& g) {
    std::uint64_t pk = checked_scan_size(g.prime(), g.precision(), "classify_roots_mod_pk");
    std::vector<std::uint64_t> c = coeffs_u64(g);
    std::vector<std::uint64_t> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = mulmod_u64(c[i], i % pk, pk);
    std::vector<RootClassification> out;
    for (std::uint64_t x = 0; x < pk; ++x) {
        if (eval_u64(c, x, pk) != 0)
            continue;
        RootKind kind = eval_u64(d, x, pk) == 0 ? RootKind::NonSimple : RootKind::Simple;
        out.push_back({BigInt(static_cast<unsigned long>(x)), kind});
    }
    return out;
}

HenselianStatus is_k_henselian(const ModPoly& g, unsigned k, const BigInt& x) {
    require_precision_2k(g, k, "is_k_henselian");
    std::uint64_t p2k = checked_scan_size(g.prime(), 2 * k, "is_k_henselian");
    BigInt pk = prime_power(g.prime(), k);
    if (x < 0 || x >= pk)
        throw InvalidArgumentError("is_k_henselian: residue out of range");
    std::uint64_t pku = static_cast<std::uint64_t>(mpz_get_ui(pk.get_mpz_t()));
    std::uint64_t xu = mpz_get_ui(x.get_mpz_t());

    std::vector<std::uint64_t> c = coeffs_u64(g);
    std::vector<std::uint64_t> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = mulmod_u64(c[i], i % p2k, p2k);

    HenselianStatus st;
    if (eval_u64(d, xu, p2k) % pku == 0)
        return st; // derivative vanishes mod p^k: not Henselian
    for (std::uint64_t y = xu; y < p2k; y += pku) {
        if (eval_u64(c, y, p2k) == 0) {
            st.henselian = true;
            break;
        }
    }
    if (!st.henselian)
        return st;
    if (k == 1) {
        st.primitive = true; // mod p^0 is vacuous
    } else {
        std::uint64_t pk1 = pku / g.prime().value();
        st.primitive = (eval_u64(d, xu, p2k) % pk1 == 0);
    }
    return st;
}

HenselianStatus is_k_henselian(const IntPoly& f, PrimeModulus p, unsigned k,
                               const BigInt& x) {
    return is_k_henselian(ModPoly::reduce(f, p, 2 * k), k, x);
}

long henselian_count(const ModPoly& g, unsigned k) {
    require_precision_2k(g, k, "henselian_count");
    std::uint64_t p2k = checked_scan_size(g.prime(), 2 * k, "henselian_count");
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i)
        pk *= g.prime().value();
    std::vector<bool> marks = liftable_marks(g, pk, p2k);
    std::vector<std::uint64_t> c = coeffs_u64(g);
    std::vector<std::uint64_t> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = mulmod_u64(c[i], i % p2k, p2k);
    long count = 0;
    for (std::uint64_t x = 0; x < pk; ++x)
        if (marks[x] && eval_u64(d, x, p2k) % pk != 0)
            ++count;
    return count;
}

long henselian_count(const IntPoly& f, PrimeModulus p, unsigned k) {
    return henselian_count(ModPoly::reduce(f, p, 2 * k), k);
}

long primitive_henselian_count(const ModPoly& g, unsigned m) {
    require_precision_2k(g, m, "primitive_henselian_count");
    std::uint64_t p2m = checked_scan_size(g.prime(), 2 * m, "primitive_henselian_count");
    std::uint64_t pm = 1;
    for (unsigned i = 0; i < m; ++i)
        pm *= g.prime().value();
    std::vector<bool> marks = liftable_marks(g, pm, p2m);
    std::vector<std::uint64_t> c = coeffs_u64(g);
    std::vector<std::uint64_t> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i)
        d[i - 1] = mulmod_u64(c[i], i % p2m, p2m);
    std::uint64_t pm1 = m == 1 ? 1 : pm / g.prime().value();
    long count = 0;
    for (std::uint64_t x = 0; x < pm; ++x) {
        if (!marks[x])
            continue;
        std::uint64_t dv = eval_u64(d, x, p2m);
        if (dv % pm != 0 && dv % pm1 == 0)
            ++count;
    }
    return count;
}

long primitive_henselian_count(const IntPoly& f, PrimeModulus p, unsigned m) {
    return primitive_henselian_count(ModPoly::reduce(f, p, 2 * m), m);
}

long count_roots_zp(const IntPoly& f, PrimeModulus p) {
    RootCountDiagnostics diag;
    return count_roots_zp(f, p, diag);
}

long count_roots_zp(const IntPoly& f, PrimeModulus p, RootCountDiagnostics& diag) {
    DescentOutput out = run_descent(f, p, false, 0);
    diag = out.diag;
    long total = 0;
    for (long c : out.per_residue)
        total += c;
    return total;
}

long count_roots_residue(const IntPoly& f, PrimeModulus p, unsigned long r) {
    if (r >= p.value())
        throw InvalidArgumentError("count_roots_residue: residue out of range");
    DescentOutput out = run_descent(f, p, false, 0, r);
    return out.per_residue[r];
}

long count_roots_residue(const IntPoly& f, PrimeModulus p, unsigned long r,
                         RootCountDiagnostics& diag) {
    if (r >= p.value())
        throw InvalidArgumentError("count_roots_residue: residue out of range");
    DescentOutput out = run_descent(f, p, false, 0, r);
    diag = out.diag;
    return out.per_residue[r];
}

std::vector<long> count_roots_by_residue(const IntPoly& f, PrimeModulus p) {
    RootCountDiagnostics diag;
    return count_roots_by_residue(f, p, diag);
}

std::vector<long> count_roots_by_residue(const IntPoly& f, PrimeModulus p,
                                         RootCountDiagnostics& diag) {
    DescentOutput out = run_descent(f, p, false, 0);
    diag = out.diag;
    return std::move(out.per_residue);
}

long count_roots_zp_certified(const IntPoly& f, PrimeModulus p, unsigned max_k) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    IntPoly g = squarefree_part(f);
    unsigned budget_k = 0;
    {
        BigInt size = 1;
        BigInt limit(static_cast<unsigned long>(budgets::kResidueScan));
        unsigned long pv = p.value();
        while (size * pv * pv <= limit) {
            size *= pv;
            size *= pv;
            ++budget_k;
        }
    }
    unsigned kmax = max_k == 0 ? budget_k : max_k;
    for (unsigned k = 1; k <= kmax; ++k) {
        ModPoly gk = ModPoly::reduce(g, p, k);
        if (gk.is_zero())
            continue;
        bool clean = true;
        for (const auto& root : classify_roots_mod_pk(gk)) {
            if (root.kind == RootKind::NonSimple) {
                clean = false;
                break;
            }
        }
        if (!clean)
            continue;
        return henselian_count(ModPoly::reduce(g, p, 2 * k), k);
    }
    throw BudgetExceededError(
        "count_roots_zp_certified: no certifying precision within cap; raise the cap");
}

BigInt hensel_lift(const IntPoly& f, PrimeModulus p, const BigInt& x0, unsigned k0,
                   unsigned target) {
    if (f.is_zero())
        throw ZeroPolynomialError();
    if (k0 == 0 || target == 0)
        throw InvalidArgumentError("hensel_lift: precisions must be positive");
    BigInt pk0 = prime_power(p, k0);
    if (x0 < 0 || x0 >= pk0)
        throw InvalidArgumentError("hensel_lift: residue out of range");
    std::uint64_t p2k0 = checked_scan_size(p, 2 * k0, "hensel_lift");
    BigInt p2k0b(static_cast<unsigned long>(p2k0));

    IntPoly df = derivative(f);
    BigInt dv = mod_reduce(eval(df, x0), pk0);
    if (dv == 0)
        throw InvalidArgumentError("hensel_lift: f'(x0) ≡ 0 mod p^k0, hypotheses violated");

    // Find the root lift y mod p^{2k0}; Theorem hypotheses demand one.
    std::optional<BigInt> lift;
    for (BigInt y = x0; y < p2k0b; y += pk0) {
        if (mod_reduce(eval(f, y), p2k0b) == 0) {
            lift = y;
            break;
        }
    }
    if (!lift)
        throw InvalidArgumentError(
            "hensel_lift: no root lift mod p^{2k0}, hypotheses violated");

    unsigned long v = *valuation(eval(df, *lift), p); // < k0, stable along the lift
    unsigned M = target + 2 * static_cast<unsigned>(v) + 2;
    BigInt pm = prime_power(p, M);
    BigInt pt = prime_power(p, target);
    BigInt ptv = prime_power(p, target + static_cast<unsigned>(v));
    BigInt pvb = prime_power(p, static_cast<unsigned>(v));
    BigInt x = *lift;
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        BigInt fx = mod_reduce(eval(f, x), pm);
        if (mod_reduce(fx, ptv) == 0)
            return mod_reduce(x, pt);
        BigInt fpx = mod_reduce(eval(df, x), pm);
        BigInt unit;
        mpz_divexact(unit.get_mpz_t(), fpx.get_mpz_t(), pvb.get_mpz_t());
        BigInt num;
        mpz_divexact(num.get_mpz_t(), fx.get_mpz_t(), pvb.get_mpz_t());
        BigInt inv;
        if (!mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), pm.get_mpz_t()))
            throw InternalError("hensel_lift: derivative unit not invertible");
        x = mod_reduce(x - num * inv, pm);
    }
    throw InternalError("hensel_lift: Newton iteration did not converge");
}

std::vector<BigInt> root_witnesses(const IntPoly& f, PrimeModulus p, unsigned target) {
    if (target == 0)
        throw InvalidArgumentError("root_witnesses: target precision must be positive");
    DescentOutput out = run_descent(f, p, true, target);
    BigInt pt = prime_power(p, target);
    for (const auto& w : out.witnesses)
        if (mod_reduce(eval(f, w), pt) != 0)
            throw InternalError("root witness fails its own congruence");
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return std::move(out.witnesses);
}

} // namespace padicroots
