#include "padicroots/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "padicroots/budgets.hpp"

namespace padicroots {

namespace {

void check_same_spec(const GroupSpec& a, const GroupSpec& b, const char* what) {
    if (!(a == b))
        throw InvalidArgumentError(std::string(what) + ": group spec mismatch");
}

void check_dim(const GroupSpec& spec, const GroupVec& v, const char* what) {
    if (v.size() != spec.dim())
        throw InvalidArgumentError(std::string(what) + ": vector dimension mismatch");
    for (unsigned long e : v)
        if (e >= spec.q())
            throw InvalidArgumentError(std::string(what) + ": entry out of range");
}

bool is_zero_vec(const GroupVec& v) {
    for (unsigned long e : v)
        if (e != 0)
            return false;
    return true;
}

void check_law(const GroupSpec& spec, const PushforwardLaw& law, const char* what) {
    if (law.q != spec.q() || law.prob.size() != spec.q())
        throw InvalidArgumentError(std::string(what) + ": law modulus mismatch");
}

} // namespace

GroupSpec::GroupSpec(PrimeModulus p, unsigned M, unsigned dim)
    : p_(p.value()), M_(M), dim_(dim) {
    if (M == 0 || dim == 0)
        throw InvalidArgumentError("GroupSpec: M and d must be positive");
    BigInt q = prime_power(p, M);
    BigInt budget(static_cast<unsigned long>(budgets::kGroupSize));
    if (q > budget)
        throw BudgetExceededError("GroupSpec: q exceeds dense budget");
    q_ = mpz_get_ui(q.get_mpz_t());
    BigInt total = 1;
    for (unsigned i = 0; i < dim; ++i) {
        total *= q_;
        if (total > budget)
            throw BudgetExceededError("GroupSpec: q^d exceeds dense budget");
    }
    size_ = static_cast<std::size_t>(mpz_get_ui(total.get_mpz_t()));
}

std::size_t GroupSpec::index(const GroupVec& v) const {
    check_dim(*this, v, "GroupSpec::index");
    std::size_t idx = 0;
    for (std::size_t j = dim_; j-- > 0;)
        idx = idx * q_ + v[j];
    return idx;
}

GroupVec GroupSpec::vec(std::size_t index) const {
    GroupVec v(dim_);
    for (unsigned j = 0; j < dim_; ++j) {
        v[j] = index % q_;
        index /= q_;
    }
    return v;
}

GroupMeasure::GroupMeasure(GroupSpec spec) : spec_(spec), w_(spec.size(), Rational(0)) {}

GroupMeasure GroupMeasure::dirac(GroupSpec spec, const GroupVec& at) {
    GroupMeasure mu(spec);
    mu.w_[spec.index(at)] = 1;
    return mu;
}

Rational GroupMeasure::total_mass() const {
    Rational total(0);
    for (const auto& x : w_)
        total += x;
    return total;
}

unsigned long dot(const GroupSpec& spec, const GroupVec& u, const GroupVec& w) {
    check_dim(spec, u, "dot");
    check_dim(spec, w, "dot");
    unsigned long acc = 0;
    for (unsigned j = 0; j < spec.dim(); ++j)
        acc = (acc + u[j] * w[j]) % spec.q();
    return acc;
}

unsigned long u_weight(const GroupSpec& spec, const GroupVec& u,
                       const std::vector<GroupVec>& vectors) {
    check_dim(spec, u, "u_weight");
    if (is_zero_vec(u))
        throw InvalidArgumentError("u_weight: u must be nonzero");
    unsigned long count = 0;
    for (const auto& v : vectors)
        if (dot(spec, u, v) != 0)
            ++count;
    return count;
}

unsigned long minimal_weight(const GroupSpec& spec,
                             const std::vector<GroupVec>& vectors) {
    unsigned long best = vectors.size();
    for (std::size_t idx = 1; idx < spec.size(); ++idx) {
        GroupVec u = spec.vec(idx);
        unsigned long w = u_weight(spec, u, vectors);
        best = std::min(best, w);
        if (best == 0)
            break;
    }
    return best;
}

std::vector<GroupVec> pascal_vectors(unsigned long n, unsigned dim, unsigned long q) {
    if (dim == 0 || q == 0)
        throw InvalidArgumentError("pascal_vectors: empty shape");
    std::vector<GroupVec> out;
    out.reserve(n);
    std::vector<unsigned long> row(dim, 0);
    for (unsigned long i = 0; i < n; ++i) {
        if (i == 0) {
            row.assign(dim, 0);
            row[0] = 1 % q;
        } else {
            // next Pascal row in place, truncated to the first dim columns
            for (std::size_t j = std::min<std::size_t>(dim - 1, i); j >= 1; --j)
                row[j] = (row[j] + row[j - 1]) % q;
        }
        out.push_back(row);
    }
    return out;
}

Rational tau(const PushforwardLaw& mod_p_law) {
    if (mod_p_law.m != 1)
        throw InvalidArgumentError("tau expects a mod-p pushforward");
    Rational sum(0);
    for (const auto& w : mod_p_law.prob)
        sum += w * w;
    return Rational(1) - sum;
}

GroupMeasure step_measure(const GroupSpec& spec, const PushforwardLaw& law,
                          const GroupVec& w) {
    check_law(spec, law, "step_measure");
    check_dim(spec, w, "step_measure");
    GroupMeasure mu(spec);
    GroupVec scaled(spec.dim());
    for (unsigned long x = 0; x < spec.q(); ++x) {
        if (law.prob[x] == 0)
            continue;
        for (unsigned j = 0; j < spec.dim(); ++j)
            scaled[j] = (x * w[j]) % spec.q();
        mu.weights()[spec.index(scaled)] += law.prob[x];
    }
    return mu;
}

GroupMeasure convolve(const GroupMeasure& a, const GroupMeasure& b) {
    check_same_spec(a.spec(), b.spec(), "convolve");
    const GroupSpec& spec = a.spec();
    GroupMeasure out(spec);
    // sparse pass over the support of b
    std::vector<std::size_t> support;
    for (std::size_t ib = 0; ib < spec.size(); ++ib)
        if (b.weights()[ib] != 0)
            support.push_back(ib);
    GroupVec va(spec.dim()), sum(spec.dim());
    for (std::size_t ia = 0; ia < spec.size(); ++ia) {
        if (a.weights()[ia] == 0)
            continue;
        va = spec.vec(ia);
        for (std::size_t ib : support) {
            GroupVec vb = spec.vec(ib);
            for (unsigned j = 0; j < spec.dim(); ++j)
                sum[j] = (va[j] + vb[j]) % spec.q();
            out.weights()[spec.index(sum)] += a.weights()[ia] * b.weights()[ib];
        }
    }
    return out;
}

GroupMeasure translate(const GroupMeasure& mu, const GroupVec& t) {
    const GroupSpec& spec = mu.spec();
    check_dim(spec, t, "translate");
    GroupMeasure out(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (mu.weights()[i] == 0)
            continue;
        GroupVec v = spec.vec(i);
        for (unsigned j = 0; j < spec.dim(); ++j)
            v[j] = (v[j] + t[j]) % spec.q();
        out.weights()[spec.index(v)] = mu.weights()[i];
    }
    return out;
}

GroupMeasure walk_distribution(const GroupSpec& spec,
                               const std::vector<GroupVec>& vectors,
                               const PushforwardLaw& law, unsigned long r) {
    check_law(spec, law, "walk_distribution");
    if (std::gcd(r % spec.q(), spec.q()) != 1)
        throw InvalidArgumentError("walk_distribution: r must be a unit mod q");
    GroupMeasure out = GroupMeasure::dirac(spec, GroupVec(spec.dim(), 0));
    unsigned long rpow = 1 % spec.q();
    GroupVec scaled(spec.dim());
    for (const auto& v : vectors) {
        check_dim(spec, v, "walk_distribution");
        for (unsigned j = 0; j < spec.dim(); ++j)
            scaled[j] = (v[j] * rpow) % spec.q();
        out = convolve(out, step_measure(spec, law, scaled));
        rpow = (rpow * r) % spec.q();
    }
    return out;
}

std::vector<std::complex<double>> fourier(const GroupMeasure& mu) {
    const GroupSpec& spec = mu.spec();
    if (spec.size() > budgets::kFourierGroupSize)
        throw BudgetExceededError("fourier: group exceeds transform budget");
    const unsigned long q = spec.q();
    std::vector<std::complex<double>> zeta(q);
    for (unsigned long t = 0; t < q; ++t) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>(t) /
                       static_cast<double>(q);
        zeta[t] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<GroupVec> cells(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        cells[i] = spec.vec(i);
    std::vector<double> dense(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        dense[i] = mpq_get_d(mu.weights()[i].get_mpq_t());
    std::vector<std::complex<double>> out(spec.size());
    for (std::size_t iu = 0; iu < spec.size(); ++iu) {
        const GroupVec& u = cells[iu];
        std::complex<double> acc = 0;
        for (std::size_t iw = 0; iw < spec.size(); ++iw) {
            if (dense[iw] == 0)
                continue;
            const GroupVec& w = cells[iw];
            unsigned long d = 0;
            for (unsigned j = 0; j < spec.dim(); ++j)
                d = (d + u[j] * w[j]) % q;
            acc += dense[iw] * zeta[d];
        }
        out[iu] = acc;
    }
    return out;
}

FourierDecayReport check_fourier_decay(const GroupSpec& spec,
                                       const std::vector<GroupVec>& vectors,
                                       const PushforwardLaw& law, unsigned long r) {
    GroupMeasure nu = walk_distribution(spec, vectors, law, r);
    std::vector<std::complex<double>> hat = fourier(nu);
    Rational tau_q = tau(reduce_pushforward(law, 1));
    double tau_d = mpq_get_d(tau_q.get_mpq_t());
    double q2 = static_cast<double>(spec.q()) * static_cast<double>(spec.q());

    FourierDecayReport report;
    report.tau_value = tau_d;
    report.sigma = vectors.size();
    report.max_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t iu = 1; iu < spec.size(); ++iu) {
        GroupVec u = spec.vec(iu);
        unsigned long w = u_weight(spec, u, vectors);
        double bound = std::exp(-tau_d * static_cast<double>(w) / q2);
        double observed = std::abs(hat[iu]);
        FourierDecayRow row{iu, w, bound, observed, observed - bound};
        if (w > 0)
            report.max_slack = std::max(report.max_slack, row.slack);
        report.sigma = std::min(report.sigma, w);
        report.rows.push_back(row);
    }
    if (!std::isfinite(report.max_slack))
        report.max_slack = 0; // no u with positive weight: nothing to bound
    return report;
}

Rational distance_to_uniform(const GroupMeasure& mu) {
    Rational uniform(1, static_cast<unsigned long>(mu.spec().size()));
    Rational best(0);
    for (const auto& w : mu.weights()) {
        Rational dev = w - uniform;
        if (dev < 0)
            dev = -dev;
        if (dev > best)
            best = dev;
    }
    return best;
}

} // namespace padicroots
