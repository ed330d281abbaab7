#include "hahn/topology.hpp"

#include "hahn/errors.hpp"
#include "hahn/text.hpp"

#include <algorithm>
#include <stdexcept>

namespace hahn {

bool BallRef::contains(const HahnNumber& y) const {
    switch (family) {
        case Family::Valuation: return in_valuation_ball(center, rational_param, y);
        case Family::Gamma: return in_gamma_ball(*partition, center, gamma_radius, y);
        case Family::LocallyUniform: return in_u_ball(center, rational_param, y);
    }
    throw std::logic_error("unreachable");
}

std::string BallRef::describe() const {
    switch (family) {
        case Family::Valuation:
            return "valuation ball |y - center| < d^(" + rational_param.str() + ")";
        case Family::Gamma:
            return "weak pseudo-ball radius " + format_double(gamma_radius) + " (partition " +
                   partition->describe() + ", seminorm index " +
                   std::to_string(mu(gamma_radius)) + ")";
        case Family::LocallyUniform:
            return "locally-uniform pseudo-ball radius " + rational_param.str();
    }
    throw std::logic_error("unreachable");
}

nlohmann::ordered_json witness_to_json(const Witness& w) {
    return {{"schema", "hahn/1"},
            {"claim", w.claim},
            {"point", print_number(w.point)},
            {"point_json", number_to_json(w.point)},
            {"inside", w.inside.describe()},
            {"inside_ok", w.inside_ok},
            {"outside", w.outside.describe()},
            {"outside_ok", w.outside_ok},
            {"verified", w.verified()}};
}

nlohmann::ordered_json check_report_to_json(const CheckReport& rep) {
    return {{"schema", "hahn/1"},
            {"claim", rep.claim},
            {"samples", rep.samples},
            {"violations", rep.violations},
            {"seed", rep.seed},
            {"details", rep.details}};
}

namespace {

Witness finish(Witness w) {
    w.inside_ok = w.inside.contains(w.point);
    w.outside_ok = !w.outside.contains(w.point);
    return w;
}

/// First rational of the form 1/m lying in (0, bound] whose block index in p
/// exceeds n. Exists for every finite partition: the candidates are infinite
/// and the excluded prefix is finite.
Rational scan_outside_prefix(const Partition& p, const Rational& bound, long long n) {
    if (bound.sign() <= 0) throw std::domain_error("scan bound must be positive");
    // Smallest m with 1/m <= bound.
    const Rational inv = Rational(1) / bound;
    BigInt m = inv.floor();
    if (Rational(m) < inv) ++m;
    for (;; ++m) {
        Rational candidate(BigInt(1), m);
        if (p.locate(candidate) > n) return candidate;
    }
}

}  // namespace

Witness witness_weak_not_valuation(const Partition& p, const Rational& n, double r) {
    if (!(r > 0.0)) throw std::domain_error("radius must be positive");
    const Rational top = p.prefix_max(1);
    if (!(n > top)) {
        throw std::domain_error("witness requires n > max of block 1 = " + top.str() +
                                ", got n = " + n.str());
    }
    Witness w;
    w.claim = "weak-not-valuation";
    w.point = HahnNumber::monomial(r / 2.0, top);
    w.inside = BallRef{BallRef::Family::Gamma, HahnNumber(), Rational(), r, p};
    w.outside = BallRef{BallRef::Family::Valuation, HahnNumber(), n, 0.0, std::nullopt};
    return finish(std::move(w));
}

Witness witness_u_not_weak(const Partition& p, const Rational& q, double r) {
    if (q.sign() <= 0) throw std::domain_error("q must be positive");
    if (!(r > 0.0)) throw std::domain_error("radius must be positive");
    const Rational qp = scan_outside_prefix(p, q, mu(r));
    Witness w;
    w.claim = "u-not-weak";
    w.point = HahnNumber::monomial((Rational(2) / q).to_double(), qp);
    w.inside = BallRef{BallRef::Family::Gamma, HahnNumber(), Rational(), r, p};
    w.outside =
        BallRef{BallRef::Family::LocallyUniform, HahnNumber(), Rational(1) / q, 0.0, std::nullopt};
    return finish(std::move(w));
}

Witness witness_restriction(const Partition& p, double q) {
    if (!(q > 0.0)) throw std::domain_error("radius must be positive");
    const Rational s = scan_outside_prefix(p, Rational(1), mu(q));
    Witness w;
    w.claim = "restriction";
    w.point = HahnNumber::monomial(2.0, s);
    w.inside = BallRef{BallRef::Family::Gamma, HahnNumber(), Rational(), q, p};
    w.outside =
        BallRef{BallRef::Family::LocallyUniform, HahnNumber(), Rational(1), 0.0, std::nullopt};
    return finish(std::move(w));
}

namespace {

/// Strictness margin: sampled coefficients stay at 98% of the radius so the
/// strict `<` survives the rounding of (center + u) - center.
constexpr double kMargin = 0.98;

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// A few exponents strictly above `base`, with small random fractional parts.
std::vector<Rational> fresh_above(const Rational& base, std::mt19937_64& rng, int count) {
    std::vector<Rational> out;
    std::uniform_int_distribution<int> whole(1, 5);
    std::uniform_int_distribution<int> num(0, 3);
    std::uniform_int_distribution<int> den(2, 7);
    for (int i = 0; i < count; ++i) {
        out.push_back(base + Rational(whole(rng)) + Rational(num(rng), den(rng)));
    }
    return out;
}

HahnNumber from_support(const HahnNumber& center, const std::vector<Term>& delta) {
    return center + HahnNumber::make(std::vector<Term>(delta));
}

}  // namespace

HahnNumber sample_in_gamma_ball(const Partition& p, const HahnNumber& center, double r,
                                std::mt19937_64& rng) {
    const long long n = mu(r);
    const auto pool = p.prefix(n);
    std::vector<Term> delta;
    if (!pool.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::uniform_int_distribution<int> how_many(
            0, static_cast<int>(std::min<std::size_t>(pool.size(), 10)));
        std::vector<std::size_t> chosen;
        for (int i = how_many(rng); i > 0; --i) chosen.push_back(pick(rng));
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        for (auto idx : chosen) {
            const double c = uniform_in(rng, -kMargin * r, kMargin * r);
            if (c != 0.0) delta.push_back(Term{pool[idx], c});
        }
    }
    std::uniform_int_distribution<int> extra(0, 3);
    for (const auto& e : fresh_above(p.prefix_max(n), rng, extra(rng))) {
        const double c = uniform_in(rng, -10.0, 10.0);
        if (c != 0.0) delta.push_back(Term{e, c});
    }
    std::sort(delta.begin(), delta.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    delta.erase(std::unique(delta.begin(), delta.end(),
                            [](const Term& a, const Term& b) { return a.exp == b.exp; }),
                delta.end());
    return from_support(center, delta);
}

HahnNumber sample_in_u_ball(const HahnNumber& center, const Rational& q, std::mt19937_64& rng) {
    if (q.sign() <= 0) throw std::domain_error("radius must be positive");
    const Rational bound = Rational(1) / q;
    const double radius = q.to_double();
    std::vector<Term> delta;
    // Candidate supports at and below the seminorm bound.
    std::vector<Rational> pool{bound};
    std::uniform_int_distribution<int> num(0, 9);
    std::uniform_int_distribution<int> den(1, 6);
    for (int i = 0; i < 8; ++i) {
        pool.push_back(bound - Rational(num(rng), den(rng)));
    }
    std::uniform_int_distribution<int> how_many(0, 6);
    const int count = how_many(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int i = 0; i < count && i < static_cast<int>(pool.size()); ++i) {
        const double c = uniform_in(rng, -kMargin * radius, kMargin * radius);
        if (c != 0.0) delta.push_back(Term{pool[static_cast<std::size_t>(i)], c});
    }
    std::uniform_int_distribution<int> extra(0, 3);
    for (const auto& e : fresh_above(bound, rng, extra(rng))) {
        const double c = uniform_in(rng, -10.0, 10.0);
        if (c != 0.0) delta.push_back(Term{e, c});
    }
    std::sort(delta.begin(), delta.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    delta.erase(std::unique(delta.begin(), delta.end(),
                            [](const Term& a, const Term& b) { return a.exp == b.exp; }),
                delta.end());
    return from_support(center, delta);
}

CheckReport check_finite_partition_equivalence(const Partition& p, const Partition& o,
                                               const HahnNumber& x, double eps,
                                               long long samples, std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
    CheckReport rep;
    rep.claim = "finite-equivalence";
    rep.seed = seed;
    rep.samples = samples;

    const long long m_eps = mu(eps);
    long long N = 1;
    for (const auto& q : o.prefix(m_eps)) N = std::max(N, p.locate(q));
    const double delta = std::min(1.0 / static_cast<double>(N), eps);

    std::mt19937_64 rng(seed);
    for (long long i = 0; i < samples; ++i) {
        const HahnNumber y = sample_in_gamma_ball(p, x, delta, rng);
        if (!in_gamma_ball(p, x, delta, y)) {
            ++rep.violations;
            rep.details += "sample " + std::to_string(i) + " escaped its own ball; ";
            continue;
        }
        if (!in_gamma_ball(o, x, eps, y)) {
            ++rep.violations;
            rep.details += "sample " + std::to_string(i) + " outside the eps ball; ";
        }
    }
    rep.details += "N = " + std::to_string(N) + ", delta = " + format_double(delta) +
                   ", partitions: " + p.describe() + " vs " + o.describe();
    return rep;
}

CheckReport check_weak_subset_u(const Partition& p, const HahnNumber& x, double r,
                                long long samples, std::uint64_t seed) {
    if (!(r > 0.0)) throw std::domain_error("radius must be positive");
    CheckReport rep;
    rep.claim = "weak-subset-u";
    rep.seed = seed;
    rep.samples = samples;

    const Rational q0 = p.prefix_max(mu(r));
    const Rational inv_r = Rational(1) / Rational::from_double(r);
    const Rational q1 = std::max(q0, inv_r) + Rational(1);
    const Rational radius = Rational(1) / q1;

    std::mt19937_64 rng(seed);
    for (long long i = 0; i < samples; ++i) {
        const HahnNumber y = sample_in_u_ball(x, radius, rng);
        if (!in_u_ball(x, radius, y)) {
            ++rep.violations;
            rep.details += "sample " + std::to_string(i) + " escaped its own ball; ";
            continue;
        }
        if (!in_gamma_ball(p, x, r, y)) {
            ++rep.violations;
            rep.details += "sample " + std::to_string(i) + " outside the weak ball; ";
        }
    }
    rep.details += "q0 = " + q0.str() + ", q1 = " + q1.str() + ", u-radius = " + radius.str();
    return rep;
}

}  // namespace hahn
