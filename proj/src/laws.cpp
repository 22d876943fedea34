#include "padicroots/laws.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "padicroots/budgets.hpp"

namespace padicroots {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw InvalidArgumentError("law parse error: empty probability");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-')
            throw InvalidArgumentError("law parse error: bad probability '" + s + "'");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InvalidArgumentError("law parse error: bad probability '" + s + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw InvalidArgumentError("law parse error: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

BigInt parse_bigint(const std::string& s) {
    std::size_t start = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start)
        throw InvalidArgumentError("law parse error: bad integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InvalidArgumentError("law parse error: bad integer '" + s + "'");
    return BigInt(s);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index), state_(mix64(master_seed ^ stream_index)) {}

std::uint64_t RngStream::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t RngStream::uniform(std::uint64_t m) {
    if (m == 0)
        throw InvalidArgumentError("uniform: empty range");
    std::uint64_t min = (-m) % m; // 2^64 mod m
    std::uint64_t r;
    do {
        r = next();
    } while (r < min);
    return r % m;
}

BigInt RngStream::uniform_big(const BigInt& m) {
    if (m <= 0)
        throw InvalidArgumentError("uniform_big: empty range");
    if (mpz_fits_ulong_p(m.get_mpz_t()))
        return BigInt(uniform(mpz_get_ui(m.get_mpz_t())));
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t(0)
                                            : ((std::uint64_t(1) << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    for (;;) {
        for (auto& w : buf)
            w = next();
        buf.back() &= top_mask;
        BigInt z;
        mpz_import(z.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (z < m)
            return z;
    }
}

RngStream RngStream::substream(std::uint64_t j) const {
    return RngStream(mix64(master_ ^ index_), j);
}

PushforwardLaw reduce_pushforward(const PushforwardLaw& law, unsigned m2) {
    if (m2 > law.m)
        throw InvalidArgumentError("reduce_pushforward: cannot raise precision");
    PushforwardLaw out;
    out.p = law.p;
    out.m = m2;
    out.q = 1;
    for (unsigned i = 0; i < m2; ++i)
        out.q *= law.p;
    out.prob.assign(out.q, Rational(0));
    for (unsigned long x = 0; x < law.q; ++x)
        out.prob[x % out.q] += law.prob[x];
    return out;
}

CoefficientLaw CoefficientLaw::finite(std::vector<Atom> atoms) {
    if (atoms.empty())
        throw InvalidArgumentError("finite law needs at least one atom");
    std::set<BigInt> seen;
    Rational total(0);
    for (auto& a : atoms) {
        a.prob.canonicalize();
        if (a.prob < 0)
            throw InvalidArgumentError("finite law: negative probability");
        if (!seen.insert(a.value).second)
            throw InvalidArgumentError("finite law: duplicate support value");
        total += a.prob;
    }
    if (total != 1)
        throw InvalidArgumentError("finite law: probabilities must sum to 1");

    CoefficientLaw law;
    law.atoms_ = std::move(atoms);
    // common denominator and cumulative thresholds for exact sampling
    BigInt d = 1;
    for (const auto& a : law.atoms_)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), mpq_denref(a.prob.get_mpq_t()));
    law.denom_ = d;
    BigInt acc = 0;
    for (const auto& a : law.atoms_) {
        Rational scaled = a.prob * Rational(d);
        scaled.canonicalize();
        if (scaled.get_den() != 1)
            throw InternalError("finite law: common denominator is not common");
        acc += scaled.get_num();
        law.cumulative_.push_back(acc);
    }
    std::string t = "finite:";
    for (std::size_t i = 0; i < law.atoms_.size(); ++i) {
        if (i)
            t += ',';
        t += law.atoms_[i].value.get_str() + "=" +
             Rational(law.atoms_[i].prob).get_str();
    }
    law.text_ = std::move(t);
    return law;
}

CoefficientLaw CoefficientLaw::rademacher() {
    CoefficientLaw law = finite({{BigInt(-1), Rational(1, 2)}, {BigInt(1), Rational(1, 2)}});
    law.text_ = "rademacher";
    return law;
}

CoefficientLaw CoefficientLaw::bernoulli01() {
    CoefficientLaw law = finite({{BigInt(0), Rational(1, 2)}, {BigInt(1), Rational(1, 2)}});
    law.text_ = "bernoulli01";
    return law;
}

CoefficientLaw CoefficientLaw::uniform_mod_p(PrimeModulus p) {
    std::vector<Atom> atoms;
    for (unsigned long v = 0; v < p.value(); ++v)
        atoms.push_back({BigInt(v), Rational(1, p.value())});
    CoefficientLaw law = finite(std::move(atoms));
    law.text_ = "uniform0p";
    return law;
}

CoefficientLaw CoefficientLaw::haar(unsigned precision_digits) {
    if (precision_digits == 0)
        throw InvalidArgumentError("haar law: precision must be at least 1 digit");
    CoefficientLaw law;
    law.haar_precision_ = precision_digits;
    law.text_ = "haar:" + std::to_string(precision_digits);
    return law;
}

CoefficientLaw CoefficientLaw::parse(std::string_view text, unsigned long p) {
    std::string s(text);
    if (s == "rademacher")
        return rademacher();
    if (s == "bernoulli01")
        return bernoulli01();
    if (s == "uniform0p")
        return uniform_mod_p(PrimeModulus(p));
    if (s.rfind("haar:", 0) == 0) {
        std::string digits = s.substr(5);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgumentError("law parse error: bad haar precision '" + digits + "'");
        return haar(static_cast<unsigned>(std::stoul(digits)));
    }
    if (s.rfind("finite:", 0) == 0) {
        std::vector<Atom> atoms;
        std::string body = s.substr(7);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t end = body.find(',', pos);
            if (end == std::string::npos)
                end = body.size();
            std::string entry = body.substr(pos, end - pos);
            std::size_t eq = entry.find('=');
            if (eq == std::string::npos)
                throw InvalidArgumentError("law parse error: expected value=prob in '" +
                                           entry + "'");
            atoms.push_back({parse_bigint(entry.substr(0, eq)),
                             parse_rational(entry.substr(eq + 1))});
            if (end == body.size())
                break;
            pos = end + 1;
        }
        return finite(std::move(atoms));
    }
    throw InvalidArgumentError("unknown law spec '" + s + "'");
}

unsigned CoefficientLaw::haar_precision() const {
    if (!is_haar())
        throw InvalidArgumentError("not a Haar law");
    return haar_precision_;
}

const std::vector<CoefficientLaw::Atom>& CoefficientLaw::atoms() const {
    if (is_haar())
        throw InvalidArgumentError("Haar law has no finite support");
    return atoms_;
}

PushforwardLaw CoefficientLaw::pushforward_mod(PrimeModulus p, unsigned m) const {
    if (m == 0)
        throw InvalidArgumentError("pushforward_mod: m must be positive");
    BigInt q = prime_power(p, m);
    if (q > BigInt(static_cast<unsigned long>(budgets::kGroupSize)))
        throw BudgetExceededError("pushforward_mod: modulus exceeds dense budget");
    unsigned long qu = mpz_get_ui(q.get_mpz_t());
    PushforwardLaw out;
    out.p = p.value();
    out.m = m;
    out.q = qu;
    out.prob.assign(qu, Rational(0));
    if (is_haar()) {
        if (m > haar_precision_)
            throw InvalidArgumentError(
                "pushforward_mod: Haar law precision insufficient for requested modulus");
        for (unsigned long x = 0; x < qu; ++x)
            out.prob[x] = Rational(1, qu);
        return out;
    }
    for (const auto& a : atoms_) {
        unsigned long r = mpz_fdiv_ui(a.value.get_mpz_t(), qu);
        out.prob[r] += a.prob;
    }
    return out;
}

Rational CoefficientLaw::prob_zero() const {
    if (is_haar())
        return Rational(0); // atomless
    for (const auto& a : atoms_)
        if (a.value == 0)
            return a.prob;
    return Rational(0);
}

bool CoefficientLaw::satisfies_zero_conditional(PrimeModulus p) const {
    if (is_haar())
        return false;
    for (const auto& a : atoms_) {
        if (a.prob == 0)
            continue;
        if (a.value != 0 && mpz_divisible_ui_p(a.value.get_mpz_t(), p.value()))
            return false;
    }
    return true;
}

bool CoefficientLaw::is_mod_p_nonconstant(PrimeModulus p) const {
    if (is_haar())
        return true;
    PushforwardLaw lp = pushforward_mod(p, 1);
    int atoms = 0;
    for (const auto& w : lp.prob)
        if (w > 0)
            ++atoms;
    return atoms >= 2;
}

BigInt CoefficientLaw::sample_value(PrimeModulus p, RngStream& stream) const {
    if (is_haar())
        return stream.uniform_big(prime_power(p, haar_precision_));
    BigInt u = stream.uniform_big(denom_);
    for (std::size_t i = 0; i < cumulative_.size(); ++i)
        if (u < cumulative_[i])
            return atoms_[i].value;
    throw InternalError("finite law sampling fell off the cumulative table");
}

IntPoly CoefficientLaw::sample_poly(PrimeModulus p, unsigned n,
                                    const RngStream& trial_stream) const {
    if (n == 0)
        throw InvalidArgumentError("sample_poly: degree must be at least 1");
    std::vector<BigInt> coeffs(n + 1);
    for (unsigned i = 0; i < n; ++i) {
        RngStream s = trial_stream.substream(i);
        coeffs[i] = sample_value(p, s);
    }
    coeffs[n] = 1;
    return IntPoly{std::move(coeffs)};
}

} // namespace padicroots
