#include "hahn/partition.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace hahn {

namespace {

constexpr long long kPrefixElementGuard = 2'000'000;

}  // namespace

std::vector<Rational> diagonal_block(long long n) {
    if (n < 1) throw std::domain_error("partition block index must be >= 1");
    if (n == 1) return {Rational(0)};
    std::vector<Rational> out;
    for (long long xa = 1; xa < n; ++xa) {
        const long long den = n - xa;
        if (boost::multiprecision::gcd(BigInt(xa), BigInt(den)) != 1) continue;
        out.emplace_back(BigInt(-xa), BigInt(den));
        out.emplace_back(BigInt(xa), BigInt(den));
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long diagonal_locate(const Rational& q) {
    const BigInt idx = boost::multiprecision::abs(q.num()) + q.den();
    if (idx > BigInt(std::numeric_limits<long long>::max())) {
        throw std::domain_error("partition index overflow for " + q.str());
    }
    return idx.convert_to<long long>();
}

struct Partition::Impl {
    bool diagonal = true;
    std::vector<std::vector<Rational>> explicit_blocks;
    std::map<Rational, long long> explicit_index;
    long long offset = 0;

    mutable std::mutex mu;
    // block_max[i-1] = max of blocks 1..i; nullopt while those blocks are all
    // empty (possible for custom partitions with a residual offset).
    mutable std::vector<std::optional<Rational>> block_max;

    std::vector<Rational> make_block(long long i) const {
        if (diagonal) return diagonal_block(i);
        std::vector<Rational> out;
        if (i <= static_cast<long long>(explicit_blocks.size())) {
            out = explicit_blocks[static_cast<std::size_t>(i - 1)];
        }
        const long long j = i - offset;
        if (j >= 1) {
            for (auto& q : diagonal_block(j)) {
                if (!explicit_index.count(q)) out.push_back(std::move(q));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void extend_max_cache(long long n) const {
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<long long>(block_max.size()) < n) {
            const long long i = static_cast<long long>(block_max.size()) + 1;
            const auto blk = make_block(i);
            std::optional<Rational> m = block_max.empty() ? std::nullopt : block_max.back();
            if (!blk.empty()) m = m ? std::max(*m, blk.back()) : blk.back();
            block_max.push_back(std::move(m));
        }
    }
};

Partition Partition::diagonal() {
    Partition p;
    auto impl = std::make_shared<Impl>();
    impl->diagonal = true;
    p.impl_ = std::move(impl);
    return p;
}

Partition Partition::custom_finite(std::vector<std::vector<Rational>> blocks,
                                   long long residual_offset) {
    if (residual_offset < 0) throw std::domain_error("residual offset must be >= 0");
    if (blocks.empty()) {
        throw std::domain_error("custom partition needs at least one explicit block");
    }
    auto impl = std::make_shared<Impl>();
    impl->diagonal = false;
    impl->offset = residual_offset;
    long long idx = 1;
    for (auto& blk : blocks) {
        if (blk.empty()) throw std::domain_error("explicit partition block is empty");
        std::sort(blk.begin(), blk.end());
        for (const auto& q : blk) {
            if (!impl->explicit_index.emplace(q, idx).second) {
                throw std::domain_error("explicit partition blocks overlap at " + q.str());
            }
        }
        ++idx;
    }
    impl->explicit_blocks = std::move(blocks);
    Partition p;
    p.impl_ = std::move(impl);
    return p;
}

std::vector<Rational> Partition::block(long long i) const {
    if (i < 1) throw std::domain_error("partition block index must be >= 1");
    return impl_->make_block(i);
}

std::vector<Rational> Partition::prefix(long long n) const {
    if (n < 1) throw std::domain_error("partition prefix index must be >= 1");
    std::vector<Rational> out;
    for (long long i = 1; i <= n; ++i) {
        auto blk = impl_->make_block(i);
        if (static_cast<long long>(out.size() + blk.size()) > kPrefixElementGuard) {
            throw std::domain_error("partition prefix too large to enumerate");
        }
        out.insert(out.end(), std::make_move_iterator(blk.begin()),
                   std::make_move_iterator(blk.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational Partition::prefix_max(long long n) const {
    if (n < 1) throw std::domain_error("partition prefix index must be >= 1");
    if (impl_->diagonal) return n >= 2 ? Rational(n - 1) : Rational(0);
    impl_->extend_max_cache(n);
    std::lock_guard<std::mutex> lock(impl_->mu);
    const auto& m = impl_->block_max[static_cast<std::size_t>(n - 1)];
    if (!m) throw std::domain_error("partition prefix " + std::to_string(n) + " is empty");
    return *m;
}

long long Partition::locate(const Rational& q) const {
    if (!impl_->diagonal) {
        auto it = impl_->explicit_index.find(q);
        if (it != impl_->explicit_index.end()) return it->second;
        return diagonal_locate(q) + impl_->offset;
    }
    return diagonal_locate(q);
}

bool Partition::is_diagonal() const noexcept { return impl_->diagonal; }

std::string Partition::describe() const {
    if (impl_->diagonal) return "diagonal";
    return "custom-finite(" + std::to_string(impl_->explicit_blocks.size()) +
           " explicit blocks, residual offset " + std::to_string(impl_->offset) + ")";
}

}  // namespace hahn
