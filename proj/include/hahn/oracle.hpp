#pragma once

#include "hahn/hahn_number.hpp"
#include "hahn/series.hpp"

#include <utility>
#include <vector>

namespace hahn::oracle {

/// Budgets for the brute-force references. All fields must be positive.
struct OracleConfig {
    long long max_terms = 200000;
    double cauchy_tol = 1e-9;
    long long m_max = 1000000;
};

/// Literal double-loop convolution. Same contract as operator*, no shared
/// algorithm code; exists so the fast path has something to disagree with.
HahnNumber mul_naive(const HahnNumber& x, const HahnNumber& y);

/// S_m = sum of a_n (x - x0)^n for n = 0..m under truncated arithmetic,
/// truncated to `cutoff`. Horner-free: plain powers, plain accumulation.
/// Throws BudgetError when m exceeds the depth budget or intermediate
/// numbers outgrow max_terms.
HahnNumber partial_sums(const PowerSeries& ps, const HahnNumber& x, long long m,
                        const Rational& cutoff, const OracleConfig& config = {});

/// Every reduced fraction with |num| + den <= bound, paired with its
/// diagonal index |num| + den, by exhaustive gcd scan. Sorted by index,
/// then by value.
std::vector<std::pair<Rational, long long>> enumerate_reduced_fractions(long long bound);

}  // namespace hahn::oracle
