// Command-line surface for the p-adic random-polynomial toolkit: exact root
// counting, Monte Carlo expectation experiments, coefficient-walk reports,
// Upsilon statistics, Igusa solution counts and rational-root experiments.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padicroots/experiments.hpp"
#include "padicroots/rationalroots.hpp"
#include "padicroots/reporting.hpp"
#include "padicroots/upsilon.hpp"

using namespace padicroots;
using nlohmann::json;

namespace {

struct Report {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> extra_comments; // CSV-only detail lines
    json json_extra = json::object();
};

void write_report(const Report& report, const std::string& format,
                  const std::string& output_path) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!output_path.empty()) {
        file.open(output_path);
        if (!file)
            throw InvalidArgumentError("cannot open output file '" + output_path + "'");
        out = &file;
    }
    if (format == "json") {
        json doc;
        doc["meta"] = json::object();
        for (const auto& [k, v] : report.meta)
            doc["meta"][k] = v;
        doc["rows"] = json::array();
        for (const auto& row : report.rows) {
            json r = json::object();
            for (std::size_t i = 0; i < report.columns.size(); ++i)
                r[report.columns[i]] = row[i];
            doc["rows"].push_back(std::move(r));
        }
        for (auto& [k, v] : report.json_extra.items())
            doc[k] = v;
        *out << doc.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : report.meta)
        *out << "# " << k << "=" << v << "\n";
    for (const auto& line : report.extra_comments)
        *out << "# " << line << "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        *out << (i ? "," : "") << report.columns[i];
    *out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            *out << (i ? "," : "") << csv_field(row[i]);
        *out << "\n";
    }
}

unsigned default_threads() {
    if (const char* env = std::getenv("PADICROOTS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256)
            return static_cast<unsigned>(v);
    }
    return 1;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

Rational parse_rational_arg(const std::string& s) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 ||
        mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw InvalidArgumentError("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------

int cmd_roots(const std::string& poly_text, unsigned long p_value, unsigned target,
              unsigned cert_cap, const std::string& format, const std::string& output) {
    IntPoly f = IntPoly::from_string(poly_text);
    PrimeModulus p(p_value);
    long count = count_roots_zp(f, p);
    long certified = count_roots_zp_certified(f, p, cert_cap);
    bool agree = count == certified;
    std::vector<BigInt> witnesses = root_witnesses(f, p, target);
    std::string witness_text;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (i)
            witness_text += ';';
        witness_text += witnesses[i].get_str();
    }

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "roots"},
                   {"poly", poly_text},
                   {"p", std::to_string(p_value)},
                   {"witness_target", std::to_string(target)}};
    report.columns = {"poly", "p", "count", "certified", "agree", "witnesses_mod_p_target"};
    report.rows.push_back({f.to_string(), std::to_string(p_value), std::to_string(count),
                           std::to_string(certified), bool_str(agree), witness_text});
    write_report(report, format, output);
    return agree ? 0 : 1;
}

int cmd_estimate(const std::string& law_text, unsigned long p_value, unsigned n,
                 long trials, std::uint64_t seed, unsigned threads, bool residues,
                 bool f0, bool finite_field, long audit_interval,
                 const std::string& format, const std::string& output) {
    PrimeModulus p(p_value);
    CoefficientLaw law = CoefficientLaw::parse(law_text, p_value);
    if (!law.is_mod_p_nonconstant(p))
        std::cerr << "warning: law constant mod p; Theorem hypotheses violated\n";

    ExperimentConfig cfg{.law = law};
    cfg.p = p_value;
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.audit_interval = audit_interval;
    cfg.per_residue = residues;

    std::string experiment = f0 ? "f0" : finite_field ? "finite_field" : "total";
    EstimateResult res;
    std::optional<Rational> target;
    double tolerance = 0;
    bool pass = true;
    if (f0) {
        res = mc_expected_roots_f0(cfg);
        target = known_f0_target(law, p);
        tolerance = 3.0 * res.std_error();
        if (auto bound = f0_upper_bound(law, p))
            pass = res.mean() <= mpq_get_d(bound->get_mpq_t()) + 3.0 * res.std_error();
    } else if (finite_field) {
        res = mc_finite_field_roots(cfg);
        target = finite_field_target(law, p);
        tolerance = 3.0 * res.std_error();
    } else {
        res = mc_expected_roots(cfg);
        target = known_total_target(law, p);
        tolerance = theorem1_tolerance(res.std_error(), n);
    }
    if (target)
        pass = pass && std::abs(res.mean() - mpq_get_d(target->get_mpq_t())) <= tolerance;

    if (law.is_haar() && res.precision_consumed >= law.haar_precision())
        std::cerr << "warning: root counting consumed " << res.precision_consumed
                  << " digits, at or beyond the Haar sampling precision "
                  << law.haar_precision() << "; trial counts may be biased\n";

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "estimate"},
                   {"experiment", experiment},
                   {"law", law.text()},
                   {"p", std::to_string(p_value)},
                   {"n", std::to_string(n)},
                   {"trials", std::to_string(trials)},
                   {"seed", std::to_string(seed)},
                   {"threads", std::to_string(threads)},
                   {"audit_interval", std::to_string(audit_interval)},
                   {"audited", std::to_string(res.audited)},
                   {"audit_skipped", std::to_string(res.audit_skipped)},
                   {"max_count", std::to_string(res.max_count)}};
    report.columns = {"law", "p", "n", "trials", "seed", "mean", "stderr",
                      "target", "tolerance", "pass"};
    report.rows.push_back({law.text(), std::to_string(p_value), std::to_string(n),
                           std::to_string(trials), std::to_string(seed),
                           format_double(res.mean()), format_double(res.std_error()),
                           target ? format_rational(*target) : std::string(),
                           format_double(tolerance), bool_str(pass)});
    if (residues && !res.residue_sum.empty()) {
        json detail = json::array();
        for (unsigned long r = 0; r < p_value; ++r) {
            report.extra_comments.push_back(
                "residue " + std::to_string(r) + " mean=" +
                format_double(res.residue_mean(r)) +
                " stderr=" + format_double(res.residue_std_error(r)));
            detail.push_back({{"residue", r},
                              {"mean", format_double(res.residue_mean(r))},
                              {"stderr", format_double(res.residue_std_error(r))}});
        }
        report.json_extra["residues"] = std::move(detail);
    }
    write_report(report, format, output);
    return pass ? 0 : 1;
}

int cmd_walk(unsigned long p_value, unsigned M, unsigned d, unsigned long n,
             const std::string& law_text, unsigned long r, const std::string& format,
             const std::string& output) {
    PrimeModulus p(p_value);
    GroupSpec spec(p, M, d);
    CoefficientLaw law = CoefficientLaw::parse(law_text, p_value);
    PushforwardLaw law_q = law.pushforward_mod(p, M);
    std::vector<GroupVec> vectors = pascal_vectors(n, d, spec.q());

    FourierDecayReport decay = check_fourier_decay(spec, vectors, law_q, r);
    GroupMeasure nu = walk_distribution(spec, vectors, law_q, r);
    Rational dist = distance_to_uniform(nu);
    Rational tau_exact = tau(reduce_pushforward(law_q, 1));
    double mixing_bound =
        std::exp(-mpq_get_d(tau_exact.get_mpq_t()) * static_cast<double>(decay.sigma) /
                 (static_cast<double>(spec.q()) * static_cast<double>(spec.q())));
    bool pass = decay.max_slack <= 1e-9 && mpq_get_d(dist.get_mpq_t()) <= mixing_bound;

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "walk"},
                   {"law", law.text()},
                   {"p", std::to_string(p_value)},
                   {"M", std::to_string(M)},
                   {"d", std::to_string(d)},
                   {"n", std::to_string(n)},
                   {"r", std::to_string(r)},
                   {"tau", format_rational(tau_exact)},
                   {"sigma", std::to_string(decay.sigma)},
                   {"distance_to_uniform", format_rational(dist)},
                   {"mixing_bound", format_double(mixing_bound)},
                   {"max_slack", format_double(decay.max_slack)},
                   {"pass", bool_str(pass)}};
    report.columns = {"u_index", "weight", "bound", "observed", "slack"};
    for (const auto& row : decay.rows)
        report.rows.push_back({std::to_string(row.u_index), std::to_string(row.weight),
                               format_double(row.bound), format_double(row.observed),
                               format_double(row.slack)});
    write_report(report, format, output);
    return pass ? 0 : 1;
}

int cmd_upsilon(unsigned long p_value, unsigned k, bool exact_hk, bool non_simple,
                const std::string& format, const std::string& output) {
    PrimeModulus p(p_value);
    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "upsilon"},
                   {"p", std::to_string(p_value)},
                   {"k", std::to_string(k)}};
    report.columns = {"quantity", "value", "bound", "pass"};
    bool pass = true;
    report.rows.push_back({"size", upsilon_size(p, k).get_str(), "", ""});
    if (exact_hk) {
        Rational mean = exact_mean_Hk_over_upsilon(p, k);
        report.rows.push_back({"exact_mean_Hk", format_rational(mean), "", ""});
    }
    if (non_simple) {
        Rational prob = exact_prob_non_simple(p, k);
        Rational bound(1);
        if (k >= 1)
            bound = Rational(1, static_cast<unsigned long>(
                                     mpz_get_ui(prime_power(p, k - 1).get_mpz_t())));
        bool ok = prob <= bound;
        pass = pass && ok;
        report.rows.push_back(
            {"prob_non_simple", format_rational(prob), format_rational(bound), bool_str(ok)});
    }
    write_report(report, format, output);
    return pass ? 0 : 1;
}

int cmd_igusa(unsigned long p_value, unsigned n, unsigned k_max,
              const std::string& alpha_text, const std::string& t_text,
              const std::string& format, const std::string& output) {
    PrimeModulus p(p_value);
    Rational t = parse_rational_arg(t_text);
    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "igusa"},
                   {"p", std::to_string(p_value)},
                   {"n", std::to_string(n)},
                   {"k_max", std::to_string(k_max)},
                   {"t", format_rational(t)}};
    report.columns = {"kind", "alpha", "k", "value", "expected", "pass"};
    bool pass = true;

    std::vector<BigInt> alphas;
    if (alpha_text == "all") {
        BigInt pk = prime_power(p, k_max);
        for (BigInt a = 0; a < pk; ++a)
            alphas.push_back(a);
    } else {
        alphas.push_back(BigInt(alpha_text));
    }
    for (const BigInt& alpha : alphas) {
        for (unsigned k = 1; k <= k_max; ++k) {
            BigInt count = igusa_solution_count(n, alpha, p, k);
            BigInt expected;
            mpz_ui_pow_ui(expected.get_mpz_t(), p_value,
                          static_cast<unsigned long>(k) * (n - 1));
            bool ok = count == expected;
            pass = pass && ok;
            report.rows.push_back({"count", alpha.get_str(), std::to_string(k),
                                   count.get_str(), expected.get_str(), bool_str(ok)});
        }
        Rational partial = poincare_partial(n, alpha, p, t, k_max);
        Rational geometric(0);
        Rational ratio = t / Rational(p_value);
        Rational pw(1);
        for (unsigned k = 0; k <= k_max; ++k) {
            geometric += pw;
            pw *= ratio;
        }
        geometric.canonicalize();
        bool ok = partial == geometric;
        pass = pass && ok;
        report.rows.push_back({"poincare", alpha.get_str(), std::to_string(k_max),
                               format_rational(partial), format_rational(geometric),
                               bool_str(ok)});
    }
    write_report(report, format, output);
    return pass ? 0 : 1;
}

int cmd_rational(const std::string& law_text, unsigned n, long trials,
                 std::uint64_t seed, unsigned threads, const std::string& format,
                 const std::string& output) {
    CoefficientLaw law = CoefficientLaw::parse(law_text, 2);
    EstimateResult res = mc_rational_root_count(law, n, trials, seed, threads);
    Rational target = law.prob_zero();
    double tolerance = rational_roots_tolerance(res.std_error(), n);
    bool pass = std::abs(res.mean() - mpq_get_d(target.get_mpq_t())) <= tolerance;

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "rational"},
                   {"law", law.text()},
                   {"n", std::to_string(n)},
                   {"trials", std::to_string(trials)},
                   {"seed", std::to_string(seed)},
                   {"threads", std::to_string(threads)}};
    report.columns = {"law", "p", "n", "trials", "seed", "mean", "stderr",
                      "target", "tolerance", "pass"};
    report.rows.push_back({law.text(), "", std::to_string(n), std::to_string(trials),
                           std::to_string(seed), format_double(res.mean()),
                           format_double(res.std_error()), format_rational(target),
                           format_double(tolerance), bool_str(pass)});
    write_report(report, format, output);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic root counting and random-polynomial experiments"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    std::string poly_text, law_text, alpha_text = "all", t_text = "1/2";
    unsigned long p_value = 3, r_value = 1;
    unsigned n = 1, k = 1, M = 1, d = 1, target = 8, cert_cap = 0;
    unsigned long walk_n = 8;
    unsigned k_max = 2;
    long trials = 1000, audit_interval = 100;
    std::uint64_t seed = 0;
    unsigned threads = default_threads();
    bool residues = false, f0 = false, finite_field = false;
    bool exact_hk = false, non_simple = false;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", output, "Output path (default: stdout)");
    };

    auto* roots = app.add_subcommand("roots", "Exact Z_p root count with certification");
    roots->add_option("--poly", poly_text, "Comma-separated coefficients, ascending degree")
        ->required();
    roots->add_option("--p", p_value, "Prime p")->required();
    roots->add_option("--target", target, "Witness precision p^target");
    roots->add_option("--cert-cap", cert_cap, "Certification precision cap (0 = budget)");
    add_io(roots);

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo root-count estimates");
    estimate->add_option("--law", law_text, "Coefficient law spec")->required();
    estimate->add_option("--p", p_value, "Prime p")->required();
    estimate->add_option("--n", n, "Polynomial degree")->required();
    estimate->add_option("--trials", trials, "Trial count")->required();
    estimate->add_option("--seed", seed, "Master seed");
    estimate->add_option("--threads", threads, "Worker threads");
    estimate->add_option("--audit-interval", audit_interval,
                         "Certified audit every N-th trial (0 = off)");
    estimate->add_flag("--residues", residues, "Report per-residue breakdown");
    auto* f0_flag = estimate->add_flag("--f0", f0, "Count roots of f_0(X) = f(pX)");
    auto* ff_flag =
        estimate->add_flag("--finite-field", finite_field, "Count roots of f mod p");
    f0_flag->excludes(ff_flag);
    add_io(estimate);

    auto* walk = app.add_subcommand("walk", "Coefficient-walk Fourier/mixing report");
    walk->add_option("--p", p_value, "Prime p")->required();
    walk->add_option("--M", M, "q = p^M")->required();
    walk->add_option("--d", d, "Dimension of V = (Z/qZ)^d")->required();
    walk->add_option("--n", walk_n, "Number of walk steps")->required();
    walk->add_option("--law", law_text, "Coefficient law spec")->required();
    walk->add_option("--r", r_value, "Unit r mod q");
    add_io(walk);

    auto* upsilon = app.add_subcommand("upsilon", "Upsilon_k statistics, exact");
    upsilon->add_option("--p", p_value, "Prime p")->required();
    upsilon->add_option("--k", k, "Precision exponent k")->required();
    upsilon->add_flag("--exact-hk", exact_hk, "Exact E[H_k] over Upsilon_{2k}");
    upsilon->add_flag("--non-simple", non_simple, "Exact Pr(non-simple root mod p^k)");
    add_io(upsilon);

    auto* igusa = app.add_subcommand("igusa", "Igusa solution counts and Poincare sums");
    igusa->add_option("--p", p_value, "Prime p")->required();
    igusa->add_option("--n", n, "Polynomial degree (>= 2)")->required();
    igusa->add_option("--k-max", k_max, "Largest precision exponent");
    igusa->add_option("--alpha", alpha_text, "Residue alpha, or 'all'");
    igusa->add_option("--t", t_text, "Poincare series argument (rational)");
    add_io(igusa);

    auto* rational = app.add_subcommand("rational", "Integer-root Monte Carlo experiment");
    rational->add_option("--law", law_text, "Finite integer coefficient law")->required();
    rational->add_option("--n", n, "Polynomial degree")->required();
    rational->add_option("--trials", trials, "Trial count")->required();
    rational->add_option("--seed", seed, "Master seed");
    rational->add_option("--threads", threads, "Worker threads");
    add_io(rational);

    CLI11_PARSE(app, argc, argv);

    try {
        if (roots->parsed())
            return cmd_roots(poly_text, p_value, target, cert_cap, format, output);
        if (estimate->parsed())
            return cmd_estimate(law_text, p_value, n, trials, seed, threads, residues,
                                f0, finite_field, audit_interval, format, output);
        if (walk->parsed())
            return cmd_walk(p_value, M, d, walk_n, law_text, r_value, format, output);
        if (upsilon->parsed())
            return cmd_upsilon(p_value, k, exact_hk, non_simple, format, output);
        if (igusa->parsed())
            return cmd_igusa(p_value, n, k_max, alpha_text, t_text, format, output);
        if (rational->parsed())
            return cmd_rational(law_text, n, trials, seed, threads, format, output);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
