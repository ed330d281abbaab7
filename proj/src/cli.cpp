#include "hahn/cli.hpp"

#include "hahn/errors.hpp"
#include "hahn/oracle.hpp"
#include "hahn/partition.hpp"
#include "hahn/seminorm.hpp"
#include "hahn/series.hpp"
#include "hahn/text.hpp"
#include "hahn/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hahn {

namespace {

using nlohmann::ordered_json;

/// Bad flag combinations and malformed flag values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
    err << ordered_json{{"schema", "hahn/1"}, {"error", code}, {"message", message}}.dump()
        << "\n";
}

double default_tol() {
    if (const char* env = std::getenv("HAHN_DEFAULT_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0 && std::isfinite(v)) return v;
        } catch (const std::exception&) {
        }
    }
    return 1e-10;
}

PowerSeries series_from_flag(const std::string& name) {
    if (name == "geometric") return PowerSeries::geometric();
    if (name == "exp") return PowerSeries::exponential();
    if (name == "sin") return PowerSeries::sine();
    if (name == "cos") return PowerSeries::cosine();
    if (name.rfind("geom:", 0) == 0) {
        return PowerSeries::geometric_ratio(std::stod(name.substr(5)));
    }
    if (name.rfind("file:", 0) == 0) {
        const std::string path = name.substr(5);
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open series file '" + path + "'");
        nlohmann::json j;
        in >> j;
        return PowerSeries::from_json(j);
    }
    throw UsageError("unknown series '" + name +
                     "' (want geometric|exp|sin|cos|geom:<c>|file:<path>)");
}

/// The canonical finite relabeling of the diagonal partition: the first two
/// blocks swapped, everything else kept in place.
Partition swapped_diagonal() {
    return Partition::custom_finite({diagonal_block(2), diagonal_block(1)}, 0);
}

struct SelftestRow {
    std::string name;
    bool ok;
    std::string note;
};

std::vector<SelftestRow> run_selftest();

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated Hahn-field arithmetic, partition topologies, and weak series "
                 "evaluation"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false;
    std::uint64_t seed = 20240801;
    double tol = default_tol();
    std::string cutoff_text = "8";
    app.add_flag("--json", json_out, "emit JSON instead of text");
    app.add_option("--seed", seed, "PRNG seed for sampling subcommands");
    app.add_option("--tol", tol, "numeric tolerance (default from HAHN_DEFAULT_TOL or 1e-10)");
    app.add_option("--cutoff", cutoff_text, "truncation cutoff as p or p/q");

    auto* c_expr = app.add_subcommand("eval-expr", "evaluate a field expression");
    std::string expr_text;
    c_expr->add_option("expr", expr_text, "expression over +, -, *, reals, d, d^(p/q)")
        ->required();

    auto* c_semi = app.add_subcommand("seminorm", "evaluate one semi-norm");
    std::string semi_flavor, semi_radius, semi_expr;
    long long semi_index = 0;
    c_semi->add_option("--flavor", semi_flavor, "gamma or u")->required();
    c_semi->add_option("--index", semi_index, "prefix depth n for the gamma family");
    c_semi->add_option("--radius", semi_radius, "rational radius r for the u family");
    c_semi->add_option("--expr", semi_expr, "the number, canonical text or expression")
        ->required();

    auto* c_metric = app.add_subcommand("metric", "truncated metric between two numbers");
    std::string metric_flavor, metric_x, metric_y;
    int metric_k = 16;
    c_metric->add_option("--flavor", metric_flavor, "gamma or u")->required();
    c_metric->add_option("--k", metric_k, "number of series terms");
    c_metric->add_option("--x", metric_x)->required();
    c_metric->add_option("--y", metric_y)->required();

    auto* c_part = app.add_subcommand("partition", "print partition blocks");
    std::string part_kind = "diagonal";
    long long part_block = 0, part_prefix = 0;
    c_part->add_option("--kind", part_kind, "partition kind (diagonal)");
    c_part->add_option("--block", part_block, "print block N");
    c_part->add_option("--prefix", part_prefix, "print the union of blocks 1..N");

    auto* c_wit = app.add_subcommand("witness", "construct a separation witness");
    std::string wit_claim, wit_n = "2", wit_q = "1";
    double wit_radius = 0.5;
    c_wit->add_option("--claim", wit_claim, "weak-not-valuation | u-not-weak | restriction")
        ->required();
    c_wit->add_option("--n", wit_n, "valuation exponent (weak-not-valuation)");
    c_wit->add_option("--q", wit_q, "locally uniform radius (u-not-weak)");
    c_wit->add_option("--radius", wit_radius, "weak pseudo-ball radius");

    auto* c_check = app.add_subcommand("check", "sampled topology inclusion check");
    std::string check_claim, check_x = "0";
    long long check_samples = 200;
    double check_eps = 0.25, check_radius = 0.5;
    c_check->add_option("--claim", check_claim, "finite-equivalence | weak-subset-u")
        ->required();
    c_check->add_option("--samples", check_samples, "number of sampled points");
    c_check->add_option("--eps", check_eps, "target radius (finite-equivalence)");
    c_check->add_option("--radius", check_radius, "target radius (weak-subset-u)");
    c_check->add_option("--x", check_x, "center, canonical text or expression");

    auto* c_radius = app.add_subcommand("radius", "estimate the radius of convergence");
    std::string radius_series;
    long long radius_n = 200, radius_window = 0;
    c_radius->add_option("--series", radius_series, "geometric|exp|sin|cos|geom:<c>|file:<path>")
        ->required();
    c_radius->add_option("--n", radius_n, "inspection depth");
    c_radius->add_option("--window", radius_window, "estimator window (default n/4)");

    auto* c_eval = app.add_subcommand("eval", "evaluate a series at a point");
    std::string eval_series, eval_x;
    c_eval->add_option("--series", eval_series, "geometric|exp|sin|cos|geom:<c>|file:<path>")
        ->required();
    c_eval->add_option("--x", eval_x, "the point, canonical text or expression")->required();

    auto* c_self = app.add_subcommand("selftest", "run oracle-vs-main comparisons");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return 2;
    }

    try {
        if (c_expr->parsed()) {
            const HahnNumber x = eval_expression(expr_text);
            if (json_out) {
                out << number_to_json(x).dump() << "\n";
            } else {
                out << print_number(x) << "\n";
            }
            return 0;
        }

        if (c_semi->parsed()) {
            const HahnNumber x = eval_expression(semi_expr);
            double value = 0.0;
            if (semi_flavor == "gamma") {
                if (semi_index < 1) throw UsageError("gamma flavor needs --index N with N >= 1");
                value = gamma_seminorm(Partition::diagonal(), semi_index, x);
            } else if (semi_flavor == "u") {
                if (semi_radius.empty()) throw UsageError("u flavor needs --radius p/q");
                value = u_seminorm(Rational::parse(semi_radius), x);
            } else {
                throw UsageError("--flavor must be gamma or u");
            }
            if (json_out) {
                out << ordered_json{{"schema", "hahn/1"}, {"flavor", semi_flavor},
                                    {"value", value}}
                           .dump()
                    << "\n";
            } else {
                out << format_double(value) << "\n";
            }
            return 0;
        }

        if (c_metric->parsed()) {
            const HahnNumber x = eval_expression(metric_x);
            const HahnNumber y = eval_expression(metric_y);
            MetricValue m;
            if (metric_flavor == "gamma") {
                m = metric_gamma(Partition::diagonal(), x, y, metric_k);
            } else if (metric_flavor == "u") {
                m = metric_u(x, y, metric_k);
            } else {
                throw UsageError("--flavor must be gamma or u");
            }
            out << ordered_json{{"schema", "hahn/1"}, {"value", m.value},
                                {"error_bound", m.error_bound}}
                       .dump()
                << "\n";
            return 0;
        }

        if (c_part->parsed()) {
            if (part_kind != "diagonal") throw UsageError("only --kind diagonal is exposed");
            if ((part_block > 0) == (part_prefix > 0)) {
                throw UsageError("give exactly one of --block N or --prefix N (N >= 1)");
            }
            const Partition p = Partition::diagonal();
            const auto values = part_block > 0 ? p.block(part_block) : p.prefix(part_prefix);
            if (json_out) {
                ordered_json arr = ordered_json::array();
                for (const auto& q : values) arr.push_back(q.str());
                out << ordered_json{{"schema", "hahn/1"},
                                    {"kind", part_kind},
                                    {part_block > 0 ? "block" : "prefix",
                                     part_block > 0 ? part_block : part_prefix},
                                    {"values", std::move(arr)}}
                           .dump()
                    << "\n";
            } else {
                for (const auto& q : values) out << q.str() << "\n";
            }
            return 0;
        }

        if (c_wit->parsed()) {
            const Partition p = Partition::diagonal();
            Witness w;
            if (wit_claim == "weak-not-valuation") {
                w = witness_weak_not_valuation(p, Rational::parse(wit_n), wit_radius);
            } else if (wit_claim == "u-not-weak") {
                w = witness_u_not_weak(p, Rational::parse(wit_q), wit_radius);
            } else if (wit_claim == "restriction") {
                w = witness_restriction(p, wit_radius);
            } else {
                throw UsageError("--claim must be weak-not-valuation, u-not-weak or restriction");
            }
            out << witness_to_json(w).dump() << "\n";
            return 0;
        }

        if (c_check->parsed()) {
            if (check_samples < 1) throw UsageError("--samples must be >= 1");
            const HahnNumber x = eval_expression(check_x);
            CheckReport rep;
            if (check_claim == "finite-equivalence") {
                rep = check_finite_partition_equivalence(swapped_diagonal(),
                                                         Partition::diagonal(), x, check_eps,
                                                         check_samples, seed);
            } else if (check_claim == "weak-subset-u") {
                rep = check_weak_subset_u(Partition::diagonal(), x, check_radius, check_samples,
                                          seed);
            } else {
                throw UsageError("--claim must be finite-equivalence or weak-subset-u");
            }
            out << check_report_to_json(rep).dump() << "\n";
            return rep.violations == 0 ? 0 : 1;
        }

        if (c_radius->parsed()) {
            const PowerSeries ps = series_from_flag(radius_series);
            const long long window =
                radius_window > 0 ? radius_window : std::max<long long>(2, radius_n / 4);
            const ConvergenceReport rep = radius(ps, radius_n, window);
            if (json_out) {
                out << report_to_json(rep).dump() << "\n";
            } else {
                out << "radius = "
                    << (std::isinf(rep.radius) ? std::string("inf") : format_double(rep.radius))
                    << "\n";
                for (const auto& pe : rep.per_support) {
                    out << "  q = " << pe.q.str()
                        << ": limsup estimate = " << format_double(pe.limsup_estimate) << "\n";
                }
                out << rep.diagnostics << "\n";
            }
            return 0;
        }

        if (c_eval->parsed()) {
            const PowerSeries ps = series_from_flag(eval_series);
            const HahnNumber x = eval_expression(eval_x);
            const HahnNumber value = eval_weak(ps, x, Rational::parse(cutoff_text), tol);
            if (json_out) {
                out << number_to_json(value).dump() << "\n";
            } else {
                out << print_number(value) << "\n";
            }
            return 0;
        }

        if (c_self->parsed()) {
            const auto rows = run_selftest();
            bool all_ok = true;
            for (const auto& row : rows) {
                all_ok = all_ok && row.ok;
                out << (row.ok ? "[ ok ] " : "[FAIL] ") << row.name;
                if (!row.note.empty()) out << " (" << row.note << ")";
                out << "\n";
            }
            out << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
            if (!all_ok) {
                emit_error(err, "selftest_failed", "one or more oracle comparisons failed");
                return 1;
            }
            return 0;
        }
    } catch (const UsageError& e) {
        emit_error(err, "usage", e.what());
        return 2;
    } catch (const HahnError& e) {
        emit_error(err, e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error(err, "domain_error", e.what());
        return 1;
    }
    emit_error(err, "usage", "no subcommand given");
    return 2;
}

namespace {

std::vector<SelftestRow> run_selftest() {
    std::vector<SelftestRow> rows;

    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> coef_num(-4096, 4096);
        std::uniform_int_distribution<int> exp_num(-12, 12);
        std::uniform_int_distribution<int> exp_den(1, 4);
        std::uniform_int_distribution<int> n_terms(0, 6);
        auto random_number = [&] {
            std::vector<Term> terms;
            for (int i = 0, n = n_terms(rng); i < n; ++i) {
                terms.push_back(Term{Rational(exp_num(rng), exp_den(rng)),
                                     static_cast<double>(coef_num(rng)) / 64.0});
            }
            std::vector<Term> dedup;
            for (auto& t : terms) {
                bool seen = false;
                for (const auto& u : dedup) seen = seen || u.exp == t.exp;
                if (!seen && t.coef != 0.0) dedup.push_back(t);
            }
            return HahnNumber::make(std::move(dedup));
        };
        bool ok = true;
        for (int i = 0; i < 50 && ok; ++i) {
            const HahnNumber a = random_number();
            const HahnNumber b = random_number();
            const HahnNumber fast = a * b;
            const HahnNumber ref = oracle::mul_naive(a, b);
            ok = fast.terms().size() == ref.terms().size() && fast.cutoff() == ref.cutoff();
            for (std::size_t t = 0; ok && t < fast.terms().size(); ++t) {
                ok = fast.terms()[t].exp == ref.terms()[t].exp;
                const double x = fast.terms()[t].coef;
                const double y = ref.terms()[t].coef;
                const double ulp = std::abs(x) * 2.3e-16 * static_cast<double>(a.terms().size());
                ok = ok && std::abs(x - y) <= ulp;
            }
        }
        rows.push_back({"mul vs naive convolution", ok, "50 random pairs"});
    }

    {
        const HahnNumber x = HahnNumber::real(0.5) + HahnNumber::d();
        const HahnNumber fast = eval_weak(PowerSeries::geometric(), x, Rational(3), 1e-12);
        const HahnNumber ref =
            oracle::partial_sums(PowerSeries::geometric(), x, 200, Rational(3));
        const HahnNumber diff = fast - ref;
        bool ok = true;
        for (const auto& t : diff.terms()) ok = ok && std::abs(t.coef) < 1e-9;
        rows.push_back({"geometric eval vs partial sums", ok, "x = 0.5 + d, cutoff 3"});
    }

    {
        const HahnNumber fast = eval_std("exp", HahnNumber::d(), Rational(4), 1e-12);
        const HahnNumber ref =
            oracle::partial_sums(PowerSeries::exponential(), HahnNumber::d(), 7, Rational(4));
        const HahnNumber diff = fast - ref;
        bool ok = true;
        for (const auto& t : diff.terms()) ok = ok && std::abs(t.coef) < 1e-12;
        rows.push_back({"exp eval vs partial sums", ok, "x = d, cutoff 4"});
    }

    {
        const auto pairs = oracle::enumerate_reduced_fractions(12);
        bool ok = true;
        std::size_t covered = 0;
        for (long long n = 1; n <= 12; ++n) {
            const auto blk = diagonal_block(n);
            covered += blk.size();
            for (const auto& q : blk) {
                bool found = false;
                for (const auto& [frac, idx] : pairs) {
                    if (frac == q) {
                        found = true;
                        ok = ok && idx == n && diagonal_locate(q) == n;
                    }
                }
                ok = ok && found;
            }
        }
        ok = ok && covered == pairs.size();
        rows.push_back({"diagonal blocks vs exhaustive scan", ok, "indices 1..12"});
    }

    return rows;
}

}  // namespace

}  // namespace hahn
