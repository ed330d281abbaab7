#pragma once

#include "hahn/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hahn {

/// Block n of the diagonal partition: reduced fractions x/y with
/// gcd(|x|, y) = 1, y >= 1 and |x| + y = n, in ascending order. Block 1 is
/// {0}; block n has max n - 1 for n >= 2.
std::vector<Rational> diagonal_block(long long n);

/// Index of the diagonal block containing q: |num| + den of the reduced form.
long long diagonal_locate(const Rational& q);

/// Well-bounded partition of the rationals into finite blocks indexed from 1.
///
/// Two kinds: the diagonal partition, and finite relabelings of it (an
/// explicit list of finite blocks for indices 1..k, with every remaining
/// rational going to its diagonal index plus a fixed offset). Immutable;
/// copies share the prefix cache.
class Partition {
public:
    static Partition diagonal();

    /// Explicit blocks for indices 1..blocks.size(); remaining rationals get
    /// index diagonal_locate(q) + residual_offset. Throws std::domain_error
    /// on empty or overlapping explicit blocks or negative offset.
    static Partition custom_finite(std::vector<std::vector<Rational>> blocks,
                                   long long residual_offset);

    /// Block i (i >= 1), ascending. Finite by construction.
    std::vector<Rational> block(long long i) const;

    /// Union of blocks 1..n, ascending. Cached; throws std::domain_error when
    /// the enumeration would exceed the size guard.
    std::vector<Rational> prefix(long long n) const;

    /// max of the prefix (exists: each block is finite and nonempty overall).
    Rational prefix_max(long long n) const;

    /// Index of the block containing q.
    long long locate(const Rational& q) const;

    bool is_diagonal() const noexcept;
    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace hahn
