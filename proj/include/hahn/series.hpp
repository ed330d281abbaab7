#pragma once

#include "hahn/hahn_number.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hahn {

/// Named real coefficient stream n -> c(n). Closed-form rules keep the
/// series structurally inspectable at any index.
class CoefRule {
public:
    enum class Kind { One, Const, Geometric, InverseFactorial, Factorial, Sin, Cos };

    static CoefRule one() { return {Kind::One, 0.0}; }
    static CoefRule constant(double v) { return {Kind::Const, v}; }
    static CoefRule geometric(double c) { return {Kind::Geometric, c}; }
    static CoefRule inverse_factorial() { return {Kind::InverseFactorial, 0.0}; }
    static CoefRule factorial() { return {Kind::Factorial, 0.0}; }
    static CoefRule sine() { return {Kind::Sin, 0.0}; }
    static CoefRule cosine() { return {Kind::Cos, 0.0}; }

    /// "one" | "const:<v>" | "geom:<c>" | "invfact" | "fact" | "sin" | "cos"
    static CoefRule parse(const std::string& text);

    double operator()(long long n) const;
    std::string str() const;

    Kind kind;
    double param;
};

/// Exponent track alpha + beta*n carrying one coefficient rule.
struct SupportShape {
    Rational alpha;
    Rational beta;
    CoefRule rule;
};

/// Power series sum a_n (x - x0)^n whose coefficients a_n are Hahn numbers
/// with structurally declared supports: a finite set of shapes alpha + beta*n
/// (so the union of supports below any bound is finite and computable),
/// optionally overridden by an explicit head list for small n. lambda0 is the
/// declared scaling exponent: lambda(a_n) >= -n*lambda0 - o(n).
class PowerSeries {
public:
    PowerSeries(std::vector<SupportShape> shapes, Rational lambda0, HahnNumber center);

    static PowerSeries geometric();          // a_n = 1
    static PowerSeries geometric_ratio(double c);  // a_n = c^n
    static PowerSeries exponential();        // a_n = 1/n!
    static PowerSeries sine();
    static PowerSeries cosine();

    /// {"shape":[{"alpha":"p/q","beta":"p/q","coef_rule":"..."}],"lambda0":"p/q"}
    static PowerSeries from_json(const nlohmann::json& j);

    /// Copy whose coefficients for n < head.size() come from the explicit
    /// list instead of the shape rules.
    PowerSeries with_head(std::vector<HahnNumber> head) const;

    HahnNumber coefficient(long long n) const;  // a_n
    const std::vector<SupportShape>& shapes() const noexcept { return shapes_; }
    const std::vector<HahnNumber>& head() const noexcept { return head_; }
    const Rational& lambda0() const noexcept { return lambda0_; }
    const HahnNumber& center() const noexcept { return center_; }

    /// Shapes of the rescaled sequence b_n = a_n * d^(n*lambda0): beta
    /// becomes beta + lambda0, alpha is unchanged.
    std::vector<SupportShape> rescaled_shapes() const;

    /// b_n[q], combining every shape track and the head override.
    double rescaled_coef_at(long long n, const Rational& q) const;

    /// lambda(b_n) as far as the structure determines it; nullopt when b_n
    /// has no nonzero contribution at index n.
    std::optional<Rational> rescaled_lambda(long long n) const;

    /// Exponents carrying infinitely many indices after rescaling: alpha of
    /// every shape with beta + lambda0 == 0, plus all head support points.
    std::vector<Rational> stationary_exponents() const;

    std::string describe() const;

private:
    std::vector<SupportShape> shapes_;
    std::vector<HahnNumber> head_;
    Rational lambda0_;
    HahnNumber center_;
};

enum class Classification { Converges, Diverges, BoundaryIndeterminate, HypothesisViolated };

std::string to_string(Classification c);

struct SupportEstimate {
    Rational q;
    double limsup_estimate = 0.0;
};

struct ConvergenceReport {
    double radius = 0.0;  // +infinity when every estimate is 0
    std::optional<Classification> classification;
    std::vector<SupportEstimate> per_support;
    long long inspected_n = 0;
    std::string diagnostics;
};

nlohmann::ordered_json report_to_json(const ConvergenceReport& rep);

/// Radius of convergence of sum b_n y^n from the per-support-point limsup
/// estimates max |b_n[q]|^(1/n) over the trailing `window` indices (with a
/// decay detector that certifies vanishing limsups; see diagnostics). Also
/// runs the empirical |lambda(b_n)|/n -> 0 hypothesis check; failure sets
/// classification = HypothesisViolated. Pre: 1 <= window < N.
ConvergenceReport radius(const PowerSeries& ps, long long N, long long window);

/// Classifies convergence of the series at x: forms y = d^(-lambda0)(x - x0),
/// compares |y[0]| against radius() of the rescaled sequence with a +-2%
/// boundary band. Pre: lambda(x - x0) >= lambda0, else HypothesisError.
ConvergenceReport classify(const PowerSeries& ps, const HahnNumber& x, long long N);

/// Evaluates the series at x under the weak topology, accurate below the
/// requested cutoff: writes y = y0 + h, re-expands into sum_k c_k h^k with
/// c_k[q] = sum_{n>=k} C(n,k) b_n[q] y0^(n-k), each real series summed
/// adaptively until a certified geometric tail bound drops below tol.
/// Pre: classify(...) = Converges; errors: NonConvergentError,
/// HypothesisError, BudgetError.
HahnNumber eval_weak(const PowerSeries& ps, const HahnNumber& x, const Rational& cutoff,
                     double tol);

/// exp, sin, cos at any x with lambda(x) >= 0, via eval_weak with the
/// corresponding coefficient rule, lambda0 = 0, center 0.
HahnNumber eval_std(const std::string& name, const HahnNumber& x, const Rational& cutoff,
                    double tol);

enum class SequenceMode { Weak, LocallyUniform };
enum class SequenceVerdict { ConsistentWithConvergence, Inconsistent, Inconclusive };

std::string to_string(SequenceVerdict v);

struct PointVerdict {
    Rational q;
    SequenceVerdict verdict = SequenceVerdict::Inconclusive;
    double tail_variation = 0.0;
    long long birth = 0;        // first index with a nonzero coefficient
    long long last_change = 0;  // last index moving more than tol (after birth)
    bool assessed = true;       // born early enough to carry any signal
};

struct WindowVerdict {
    Rational q;
    double delta = 0.0;
    long long last_movement = 0;  // births included
    bool uniform = true;
};

struct SequenceReport {
    std::vector<PointVerdict> per_q;
    std::vector<WindowVerdict> windows;  // flagged (q, delta) pairs, LU mode only
    SequenceVerdict overall = SequenceVerdict::Inconclusive;
    long long unassessed = 0;
    std::string diagnostics;
};

nlohmann::ordered_json sequence_report_to_json(const SequenceReport& rep);

/// Empirical componentwise (weak) or windowed (locally uniform) Cauchy
/// analysis of s_0..s_N. Verdicts are classifications of the inspected
/// prefix, never proofs. Pre: N >= 8.
SequenceReport analyze_sequence(const std::function<HahnNumber(long long)>& s, long long N,
                                double tol, SequenceMode mode);

}  // namespace hahn
