#include "hahn/series.hpp"

#include "hahn/errors.hpp"
#include "hahn/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace hahn {

namespace {

constexpr long long kIterBudget = 1'000'000;
constexpr long long kMaxExpansionOrder = 100'000;
constexpr double kBoundaryBand = 0.02;
constexpr double kSlopeTol = 0.02;

/// n! as a double for n <= 170 (finite range of the double factorial).
const std::array<double, 171>& factorial_table() {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table;
}

}  // namespace

double CoefRule::operator()(long long n) const {
    switch (kind) {
        case Kind::One: return 1.0;
        case Kind::Const: return param;
        case Kind::Geometric: return std::pow(param, static_cast<double>(n));
        case Kind::InverseFactorial:
            return n <= 170 ? 1.0 / factorial_table()[static_cast<std::size_t>(n)] : 0.0;
        case Kind::Factorial:
            return n <= 170 ? factorial_table()[static_cast<std::size_t>(n)]
                            : std::numeric_limits<double>::infinity();
        case Kind::Sin: {
            if (n % 2 == 0) return 0.0;
            const double mag = n <= 170 ? 1.0 / factorial_table()[static_cast<std::size_t>(n)] : 0.0;
            return ((n - 1) / 2) % 2 == 0 ? mag : -mag;
        }
        case Kind::Cos: {
            if (n % 2 != 0) return 0.0;
            const double mag = n <= 170 ? 1.0 / factorial_table()[static_cast<std::size_t>(n)] : 0.0;
            return (n / 2) % 2 == 0 ? mag : -mag;
        }
    }
    throw std::logic_error("unreachable");
}

CoefRule CoefRule::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const auto param = [&]() -> double {
        if (colon == std::string::npos) {
            throw std::invalid_argument("coefficient rule '" + name + "' needs a parameter");
        }
        return std::stod(text.substr(colon + 1));
    };
    if (name == "one") return one();
    if (name == "const") return constant(param());
    if (name == "geom") return geometric(param());
    if (name == "invfact") return inverse_factorial();
    if (name == "fact") return factorial();
    if (name == "sin") return sine();
    if (name == "cos") return cosine();
    throw std::invalid_argument("unknown coefficient rule '" + name + "'");
}

std::string CoefRule::str() const {
    switch (kind) {
        case Kind::One: return "one";
        case Kind::Const: return "const:" + format_double(param);
        case Kind::Geometric: return "geom:" + format_double(param);
        case Kind::InverseFactorial: return "invfact";
        case Kind::Factorial: return "fact";
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
    }
    throw std::logic_error("unreachable");
}

PowerSeries::PowerSeries(std::vector<SupportShape> shapes, Rational lambda0, HahnNumber center)
    : shapes_(std::move(shapes)), lambda0_(std::move(lambda0)), center_(std::move(center)) {
    for (const auto& s : shapes_) {
        if (s.rule.kind == CoefRule::Kind::Const || s.rule.kind == CoefRule::Kind::Geometric) {
            if (!std::isfinite(s.rule.param)) {
                throw std::invalid_argument("coefficient rule parameter must be finite");
            }
        }
    }
}

PowerSeries PowerSeries::geometric() {
    return PowerSeries({SupportShape{Rational(0), Rational(0), CoefRule::one()}}, Rational(0),
                       HahnNumber());
}

PowerSeries PowerSeries::geometric_ratio(double c) {
    return PowerSeries({SupportShape{Rational(0), Rational(0), CoefRule::geometric(c)}},
                       Rational(0), HahnNumber());
}

PowerSeries PowerSeries::exponential() {
    return PowerSeries({SupportShape{Rational(0), Rational(0), CoefRule::inverse_factorial()}},
                       Rational(0), HahnNumber());
}

PowerSeries PowerSeries::sine() {
    return PowerSeries({SupportShape{Rational(0), Rational(0), CoefRule::sine()}}, Rational(0),
                       HahnNumber());
}

PowerSeries PowerSeries::cosine() {
    return PowerSeries({SupportShape{Rational(0), Rational(0), CoefRule::cosine()}}, Rational(0),
                       HahnNumber());
}

PowerSeries PowerSeries::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("lambda0")) {
        throw std::invalid_argument("series JSON must have \"shape\" and \"lambda0\"");
    }
    std::vector<SupportShape> shapes;
    for (const auto& s : j.at("shape")) {
        shapes.push_back(SupportShape{Rational::parse(s.at("alpha").get<std::string>()),
                                      Rational::parse(s.at("beta").get<std::string>()),
                                      CoefRule::parse(s.at("coef_rule").get<std::string>())});
    }
    return PowerSeries(std::move(shapes), Rational::parse(j.at("lambda0").get<std::string>()),
                       HahnNumber());
}

PowerSeries PowerSeries::with_head(std::vector<HahnNumber> head) const {
    PowerSeries ps(*this);
    ps.head_ = std::move(head);
    return ps;
}

HahnNumber PowerSeries::coefficient(long long n) const {
    if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
    if (n < static_cast<long long>(head_.size())) return head_[static_cast<std::size_t>(n)];
    std::map<Rational, double> acc;
    for (const auto& s : shapes_) {
        const double c = s.rule(n);
        if (c == 0.0) continue;
        acc[s.alpha + s.beta * Rational(n)] += c;
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [exp, coef] : acc) terms.push_back(Term{exp, coef});
    return HahnNumber::make(std::move(terms));
}

std::vector<SupportShape> PowerSeries::rescaled_shapes() const {
    std::vector<SupportShape> out = shapes_;
    for (auto& s : out) s.beta += lambda0_;
    return out;
}

double PowerSeries::rescaled_coef_at(long long n, const Rational& q) const {
    if (n < static_cast<long long>(head_.size())) {
        return head_[static_cast<std::size_t>(n)].at(q - Rational(n) * lambda0_);
    }
    double v = 0.0;
    for (const auto& s : shapes_) {
        if (s.alpha + (s.beta + lambda0_) * Rational(n) == q) v += s.rule(n);
    }
    return v;
}

std::optional<Rational> PowerSeries::rescaled_lambda(long long n) const {
    if (n < static_cast<long long>(head_.size())) {
        const auto& h = head_[static_cast<std::size_t>(n)];
        if (h.is_zero()) return std::nullopt;
        return h.lambda().value() + Rational(n) * lambda0_;
    }
    std::optional<Rational> lam;
    for (const auto& s : shapes_) {
        if (s.rule(n) == 0.0) continue;
        Rational e = s.alpha + (s.beta + lambda0_) * Rational(n);
        if (!lam || e < *lam) lam = std::move(e);
    }
    return lam;
}

std::vector<Rational> PowerSeries::stationary_exponents() const {
    std::set<Rational> qs;
    for (const auto& s : shapes_) {
        if (s.beta + lambda0_ == Rational(0)) qs.insert(s.alpha);
    }
    for (std::size_t n = 0; n < head_.size(); ++n) {
        for (const auto& t : head_[n].terms()) {
            qs.insert(t.exp + Rational(static_cast<long long>(n)) * lambda0_);
        }
    }
    return {qs.begin(), qs.end()};
}

std::string PowerSeries::describe() const {
    std::string out = "shapes[";
    bool first = true;
    for (const auto& s : shapes_) {
        if (!first) out += ", ";
        first = false;
        out += s.alpha.str() + " + " + s.beta.str() + "n : " + s.rule.str();
    }
    out += "], lambda0 = " + lambda0_.str();
    if (!head_.empty()) out += ", explicit head of " + std::to_string(head_.size());
    return out;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Converges: return "Converges";
        case Classification::Diverges: return "Diverges";
        case Classification::BoundaryIndeterminate: return "Boundary-Indeterminate";
        case Classification::HypothesisViolated: return "HypothesisViolated";
    }
    throw std::logic_error("unreachable");
}

nlohmann::ordered_json report_to_json(const ConvergenceReport& rep) {
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto& pe : rep.per_support) {
        per.push_back({{"q", pe.q.str()}, {"limsup_estimate", pe.limsup_estimate}});
    }
    nlohmann::ordered_json j{{"schema", "hahn/1"}};
    if (std::isinf(rep.radius)) {
        j["radius"] = "inf";
    } else {
        j["radius"] = rep.radius;
    }
    j["classification"] =
        rep.classification ? nlohmann::ordered_json(to_string(*rep.classification))
                           : nlohmann::ordered_json(nullptr);
    j["per_support"] = std::move(per);
    j["inspected_n"] = rep.inspected_n;
    j["diagnostics"] = rep.diagnostics;
    return j;
}

namespace {

/// Trailing-window max of |b_n[q]|^(1/n) for n in (upto-window, upto].
double window_estimate(const PowerSeries& ps, const Rational& q, long long upto,
                       long long window) {
    double m = 0.0;
    for (long long n = std::max<long long>(1, upto - window + 1); n <= upto; ++n) {
        const double c = std::abs(ps.rescaled_coef_at(n, q));
        if (c > 0.0) m = std::max(m, std::pow(c, 1.0 / static_cast<double>(n)));
    }
    return m;
}

/// Mean of |lambda(b_n)|/n over indices in (upto-window, upto] where b_n has
/// a nonzero contribution.
double mean_slope(const PowerSeries& ps, long long upto, long long window) {
    double sum = 0.0;
    long long count = 0;
    for (long long n = std::max<long long>(1, upto - window + 1); n <= upto; ++n) {
        const auto lam = ps.rescaled_lambda(n);
        if (!lam) continue;
        sum += std::abs(lam->to_double()) / static_cast<double>(n);
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

ConvergenceReport radius(const PowerSeries& ps, long long N, long long window) {
    if (N < 2) throw std::invalid_argument("inspection depth N must be >= 2");
    if (window < 1 || window >= N) {
        throw std::invalid_argument("window must satisfy 1 <= window < N");
    }
    ConvergenceReport rep;
    rep.inspected_n = N;

    std::string notes;
    double sup = 0.0;
    for (const auto& q : ps.stationary_exponents()) {
        const double full = window_estimate(ps, q, N, window);
        const double half = window_estimate(ps, q, N / 2, window);
        double lim = full;
        // A window estimate that keeps shrinking as N grows indicates a
        // vanishing limsup (the n-th root of anything eventually geometric is
        // flat); certify it as 0 and keep the raw value in the diagnostics.
        if (full < 0.75 * half) {
            lim = 0.0;
            notes += "decay at q = " + q.str() + " (window estimates " + format_double(half) +
                     " -> " + format_double(full) + "); ";
        }
        rep.per_support.push_back(SupportEstimate{q, lim});
        sup = std::max(sup, lim);
    }
    rep.radius = sup == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / sup;

    const double slope_end = mean_slope(ps, N, window);
    const double slope_mid = mean_slope(ps, N / 2, window);
    // Bounded lambdas give slope ~ c/n, which halves between N/2 and N; a
    // linear trend keeps the slope flat.
    const bool violated = slope_end > kSlopeTol && slope_end > 0.6 * slope_mid;
    if (violated) rep.classification = Classification::HypothesisViolated;

    rep.diagnostics = "window = " + std::to_string(window) + "; " + notes +
                      "lambda slope " + format_double(slope_mid) + " -> " +
                      format_double(slope_end) +
                      (violated ? " (hypothesis violated)" : "");
    return rep;
}

namespace {

/// Checks lambda(x - x0) >= lambda0 and returns y = d^(-lambda0) (x - x0).
HahnNumber rescaled_argument(const PowerSeries& ps, const HahnNumber& x) {
    const HahnNumber diff = x - ps.center();
    if (diff.is_zero()) {
        if (!diff.is_exact() && diff.cutoff() < ExtRational(ps.lambda0())) {
            throw CutoffError("cannot verify lambda(x - x0) >= " + ps.lambda0().str() +
                              ": difference vanishes below cutoff " + diff.cutoff().str());
        }
    } else if (diff.lambda() < ExtRational(ps.lambda0())) {
        throw HypothesisError("lambda(x - x0) = " + diff.lambda().str() + " is below lambda0 = " +
                              ps.lambda0().str());
    }
    return diff.shifted(-ps.lambda0());
}

}  // namespace

ConvergenceReport classify(const PowerSeries& ps, const HahnNumber& x, long long N) {
    if (N < 8) throw std::invalid_argument("inspection depth N must be >= 8");
    const HahnNumber y = rescaled_argument(ps, x);
    const double y0 = y.at(Rational(0));

    ConvergenceReport rep = radius(ps, N, std::max<long long>(1, N / 4));
    if (rep.classification == Classification::HypothesisViolated) return rep;

    const double ay = std::abs(y0);
    if (std::isinf(rep.radius)) {
        rep.classification = Classification::Converges;
    } else if (std::abs(ay - rep.radius) <= kBoundaryBand * rep.radius) {
        rep.classification = Classification::BoundaryIndeterminate;
    } else if (ay < rep.radius) {
        rep.classification = Classification::Converges;
    } else {
        rep.classification = Classification::Diverges;
        for (const auto& pe : rep.per_support) {
            if (pe.limsup_estimate * ay > 1.0) {
                rep.diagnostics += "; minimal divergent exponent q0 = " + pe.q.str();
                break;
            }
        }
    }
    rep.diagnostics += "; |y[0]| = " + format_double(ay);
    return rep;
}

namespace {

struct MovingShape {
    Rational alpha;
    Rational beta;  // beta + lambda0 > 0 after rescaling
    CoefRule rule;
};

/// Indices n >= floor at which a moving track lands exactly on exponent q.
std::vector<long long> moving_hits(const std::vector<MovingShape>& moving, const Rational& q,
                                   long long floor_n) {
    std::vector<long long> hits;
    for (const auto& s : moving) {
        const Rational n_exact = (q - s.alpha) / s.beta;
        if (!n_exact.is_integer() || n_exact.sign() < 0) continue;
        const BigInt n_big = n_exact.num();
        if (n_big > BigInt(std::numeric_limits<long long>::max())) continue;
        const long long n = n_big.convert_to<long long>();
        if (n >= floor_n) hits.push_back(n);
    }
    return hits;
}

/// Adaptive sum of c_k[q] = sum_{n>=k} C(n,k) b_n[q] y0^(n-k) with a
/// certified geometric tail bound. The sum may not stop before
/// `min_forced_n`: every transient contribution at q lies at or below it.
double sum_ck(const PowerSeries& ps, long long k, const Rational& q, double y0, double tol,
              long long min_forced_n) {
    if (y0 == 0.0) return ps.rescaled_coef_at(k, q);

    double sum = 0.0;
    double binom = 1.0;  // C(n, k), updated incrementally
    double ypow = 1.0;   // y0^(n-k)
    double last_mag = 0.0;
    long long last_idx = -1;
    std::deque<double> growth;  // per-index-step gain between nonzero terms

    for (long long n = k;; ++n) {
        if (n > k) {
            binom *= static_cast<double>(n) / static_cast<double>(n - k);
            ypow *= y0;
        }
        const double term = binom * ps.rescaled_coef_at(n, q) * ypow;
        if (!std::isfinite(term)) {
            throw BudgetError("term overflow while summing the series at exponent " + q.str());
        }
        sum += term;
        const double mag = std::abs(term);
        if (mag > 0.0) {
            if (last_idx >= 0 && last_mag > 0.0) {
                growth.push_back(
                    std::pow(mag / last_mag, 1.0 / static_cast<double>(n - last_idx)));
                if (growth.size() > 10) growth.pop_front();
            }
            last_mag = mag;
            last_idx = n;
        }
        if (n >= min_forced_n && growth.size() == 10) {
            const double rho = *std::max_element(growth.begin(), growth.end());
            if (rho < 1.0) {
                const double bound = last_mag * rho / (1.0 - rho);
                if (bound < tol) return sum;
            }
        }
        if (n - k >= kIterBudget) {
            throw BudgetError("tail bound unattainable within iteration budget at exponent " +
                              q.str());
        }
    }
}

}  // namespace

HahnNumber eval_weak(const PowerSeries& ps, const HahnNumber& x, const Rational& cutoff,
                     double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw std::invalid_argument("tolerance must be positive and finite");
    }
    const ConvergenceReport rep = classify(ps, x, 200);
    if (rep.classification == Classification::HypothesisViolated) {
        throw HypothesisError("series hypothesis violated; " + rep.diagnostics);
    }
    if (rep.classification != Classification::Converges) {
        throw NonConvergentError("series does not converge at the given point: " +
                                 to_string(*rep.classification) + "; " + rep.diagnostics);
    }

    const HahnNumber y = rescaled_argument(ps, x);
    const double y0 = y.at(Rational(0));
    const HahnNumber h = y - HahnNumber::real(y0);

    const auto qs = ps.stationary_exponents();
    std::vector<MovingShape> moving;
    Rational alpha_min(0);
    for (const auto& s : ps.rescaled_shapes()) {
        alpha_min = std::min(alpha_min, s.alpha);
        if (s.beta == Rational(0)) continue;
        if (s.beta.sign() < 0) {
            throw HypothesisError("support track " + s.alpha.str() + " + " + s.beta.str() +
                                  "n descends after rescaling; its exponents are unbounded below");
        }
        moving.push_back(MovingShape{s.alpha, s.beta, s.rule});
    }
    for (const auto& q : qs) alpha_min = std::min(alpha_min, q);

    // The result is determined at exponents below both the requested cutoff
    // and, when h itself is truncated, alpha_min + cutoff(h).
    const ExtRational fc = min(ExtRational(cutoff), ExtRational(alpha_min) + h.cutoff());
    const Rational final_cutoff = fc.value();

    long long K = 0;
    if (!h.is_zero()) {
        const Rational lam_h = h.lambda().value();
        if (lam_h.sign() <= 0) {
            throw HypothesisError("lambda(h) must be positive, got " + lam_h.str());
        }
        const Rational ratio = final_cutoff / lam_h;
        BigInt kb = ratio.floor();
        if (ratio.is_integer()) --kb;
        if (kb > BigInt(kMaxExpansionOrder)) {
            throw BudgetError("re-expansion order " + kb.str() + " exceeds the budget");
        }
        K = kb < 0 ? -1 : kb.convert_to<long long>();
    } else if (final_cutoff.sign() <= 0) {
        K = -1;
    }

    const long long head_size = static_cast<long long>(ps.head().size());
    HahnNumber acc;
    HahnNumber hpow = HahnNumber::real(1.0);
    const ExtRational pow_bound(final_cutoff - std::min(alpha_min, Rational(0)));

    for (long long k = 0; k <= K; ++k) {
        const Rational ck_cutoff =
            h.is_zero() ? final_cutoff : final_cutoff - Rational(k) * h.lambda().value();
        std::map<Rational, double> ck_terms;

        for (const auto& q : qs) {
            if (q >= ck_cutoff) continue;
            long long forced = std::max(k, head_size > 0 ? head_size - 1 : 0);
            for (long long n : moving_hits(moving, q, std::max<long long>(k, head_size))) {
                forced = std::max(forced, n);
            }
            const double v = sum_ck(ps, k, q, y0, tol, forced);
            if (v != 0.0) ck_terms[q] += v;
        }

        // Ascending tracks contribute exact finite sums at exponents not
        // already covered by a stationary stream.
        for (const auto& s : moving) {
            double binom = 1.0;
            double ypow = 1.0;
            for (long long n = k;; ++n) {
                if (n > k) {
                    binom *= static_cast<double>(n) / static_cast<double>(n - k);
                    ypow *= y0;
                }
                if (n - k >= kIterBudget) {
                    throw BudgetError("ascending track enumeration exceeded the budget");
                }
                const Rational e = s.alpha + s.beta * Rational(n);
                if (e >= ck_cutoff) break;
                if (n < head_size) continue;
                if (std::binary_search(qs.begin(), qs.end(), e)) continue;
                const double v = binom * s.rule(n) * ypow;
                if (v != 0.0) ck_terms[e] += v;
            }
        }

        std::vector<Term> terms;
        terms.reserve(ck_terms.size());
        for (auto& [exp, coef] : ck_terms) terms.push_back(Term{exp, coef});
        const HahnNumber ck = HahnNumber::make(std::move(terms), ExtRational(ck_cutoff));

        acc = acc + (ck * hpow).truncated(ExtRational(final_cutoff));
        if (k < K) hpow = (hpow * h).truncated(pow_bound);
    }
    return acc.truncated(ExtRational(final_cutoff));
}

HahnNumber eval_std(const std::string& name, const HahnNumber& x, const Rational& cutoff,
                    double tol) {
    PowerSeries ps = [&] {
        if (name == "exp") return PowerSeries::exponential();
        if (name == "sin") return PowerSeries::sine();
        if (name == "cos") return PowerSeries::cosine();
        throw std::invalid_argument("unknown standard function '" + name + "'");
    }();
    return eval_weak(ps, x, cutoff, tol);
}

std::string to_string(SequenceVerdict v) {
    switch (v) {
        case SequenceVerdict::ConsistentWithConvergence: return "ConsistentWithConvergence";
        case SequenceVerdict::Inconsistent: return "Inconsistent";
        case SequenceVerdict::Inconclusive: return "Inconclusive";
    }
    throw std::logic_error("unreachable");
}

nlohmann::ordered_json sequence_report_to_json(const SequenceReport& rep) {
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto& pv : rep.per_q) {
        per.push_back({{"q", pv.q.str()},
                       {"verdict", to_string(pv.verdict)},
                       {"tail_variation", pv.tail_variation},
                       {"birth", pv.birth},
                       {"last_change", pv.last_change},
                       {"assessed", pv.assessed}});
    }
    nlohmann::ordered_json win = nlohmann::ordered_json::array();
    for (const auto& wv : rep.windows) {
        win.push_back({{"q", wv.q.str()},
                       {"delta", wv.delta},
                       {"last_movement", wv.last_movement},
                       {"uniform", wv.uniform}});
    }
    return {{"schema", "hahn/1"},
            {"overall", to_string(rep.overall)},
            {"per_q", std::move(per)},
            {"windows", std::move(win)},
            {"unassessed", rep.unassessed},
            {"diagnostics", rep.diagnostics}};
}

SequenceReport analyze_sequence(const std::function<HahnNumber(long long)>& s, long long N,
                                double tol, SequenceMode mode) {
    if (N < 8) throw std::invalid_argument("sequence analysis needs N >= 8");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    std::vector<HahnNumber> seq;
    seq.reserve(static_cast<std::size_t>(N + 1));
    ExtRational common = ExtRational::infinity();
    for (long long n = 0; n <= N; ++n) {
        seq.push_back(s(n));
        common = min(common, seq.back().cutoff());
    }

    std::set<Rational> support;
    long long excluded = 0;
    for (const auto& sn : seq) {
        for (const auto& t : sn.terms()) {
            if (ExtRational(t.exp) < common) {
                support.insert(t.exp);
            } else {
                ++excluded;
            }
        }
    }
    if (support.empty() && excluded > 0) {
        throw CutoffError("every support point lies at or beyond the common cutoff " +
                          common.str());
    }

    const long long w = std::max<long long>(2, N / 4);
    const long long quiet = std::max<long long>(2, w / 2);

    SequenceReport rep;
    std::map<Rational, long long> last_movement;  // births included, for LU windows

    for (const auto& q : support) {
        std::vector<double> v(static_cast<std::size_t>(N + 1));
        for (long long n = 0; n <= N; ++n) v[static_cast<std::size_t>(n)] = seq[n].at(q);

        PointVerdict pv;
        pv.q = q;
        long long birth = 0;
        while (birth <= N && v[static_cast<std::size_t>(birth)] == 0.0) ++birth;
        pv.birth = birth;

        long long movement = 0;
        for (long long n = 1; n <= N; ++n) {
            if (std::abs(v[static_cast<std::size_t>(n)] - v[static_cast<std::size_t>(n - 1)]) >
                tol) {
                movement = n;
            }
        }
        last_movement[q] = movement;

        long long last_change = 0;
        const auto diff_at = [&](long long n) {
            return std::abs(v[static_cast<std::size_t>(n)] - v[static_cast<std::size_t>(n - 1)]);
        };
        for (long long n = birth + 1; n <= N; ++n) {
            if (diff_at(n) > tol) last_change = n;
        }
        pv.last_change = last_change;

        double lo = v[static_cast<std::size_t>(std::max<long long>(0, N - w))];
        double hi = lo;
        for (long long n = std::max<long long>(0, N - w); n <= N; ++n) {
            lo = std::min(lo, v[static_cast<std::size_t>(n)]);
            hi = std::max(hi, v[static_cast<std::size_t>(n)]);
        }
        pv.tail_variation = hi - lo;

        pv.assessed = birth <= N - quiet;
        if (!pv.assessed) {
            pv.verdict = SequenceVerdict::Inconclusive;
            ++rep.unassessed;
        } else if (last_change == 0 || N - last_change >= quiet) {
            pv.verdict = SequenceVerdict::ConsistentWithConvergence;
        } else {
            double r_tail = 0.0;
            double r_prev = 0.0;
            for (long long n = std::max<long long>(1, N - w + 1); n <= N; ++n) {
                r_tail = std::max(r_tail, diff_at(n));
            }
            for (long long n = std::max<long long>(1, N - 2 * w + 1); n <= N - w; ++n) {
                r_prev = std::max(r_prev, diff_at(n));
            }
            // Recent movement that is not clearly shrinking is inconsistent
            // with convergence; shrinking movement is merely inconclusive.
            if (r_prev <= tol || r_tail > 0.6 * r_prev) {
                pv.verdict = SequenceVerdict::Inconsistent;
            } else {
                pv.verdict = SequenceVerdict::Inconclusive;
            }
        }
        rep.per_q.push_back(std::move(pv));
    }

    bool any_inconsistent = false;
    bool any_inconclusive = false;
    long long assessed_count = 0;
    for (const auto& pv : rep.per_q) {
        if (!pv.assessed) continue;
        ++assessed_count;
        any_inconsistent |= pv.verdict == SequenceVerdict::Inconsistent;
        any_inconclusive |= pv.verdict == SequenceVerdict::Inconclusive;
    }

    if (mode == SequenceMode::LocallyUniform) {
        const std::array<double, 4> grid{1.0, 0.5, 0.25, 0.125};
        for (const auto& q : support) {
            for (double delta : grid) {
                const Rational dq = Rational::from_double(delta);
                long long collective = 0;
                for (const auto& [qp, move] : last_movement) {
                    if (abs(qp - q) < dq) collective = std::max(collective, move);
                }
                if (collective > N - w) {
                    rep.windows.push_back(WindowVerdict{q, delta, collective, false});
                }
            }
        }
    }

    if (!rep.per_q.empty() && assessed_count == 0) {
        rep.overall = SequenceVerdict::Inconclusive;
    } else if (any_inconsistent || !rep.windows.empty()) {
        rep.overall = SequenceVerdict::Inconsistent;
    } else if (any_inconclusive) {
        rep.overall = SequenceVerdict::Inconclusive;
    } else {
        rep.overall = SequenceVerdict::ConsistentWithConvergence;
    }

    rep.diagnostics = "N = " + std::to_string(N) + ", window = " + std::to_string(w) +
                      ", quiet span = " + std::to_string(quiet) + ", support points = " +
                      std::to_string(rep.per_q.size()) +
                      (excluded > 0 ? ", terms beyond common cutoff: " + std::to_string(excluded)
                                    : "");
    return rep;
}

}  // namespace hahn
