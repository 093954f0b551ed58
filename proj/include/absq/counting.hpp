#pragma once

// Exact arbitrary-precision evaluation of f_k(n), the number of abelian
// squares of length 2n over a k-letter alphabet, by several independent
// formulas: the f_2 central binomial closed form, the recurrence
// f_k(n) = sum_j C(n,j)^2 f_{k-1}(j), the split convolution
// f_{k1+k2}(n) = sum_i C(n,i)^2 f_{k1}(i) f_{k2}(n-i), and the sum of
// squared multinomial coefficients over weak compositions.

#include <absq/bigint.hpp>
#include <absq/errors.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace absq::counting {

inline BigCount binomial(std::int64_t n, std::int64_t j) {
    if (n < 0 || j < 0) throw std::invalid_argument("binomial: arguments must be >= 0");
    if (j > n) return 0;
    if (j > n - j) j = n - j;
    BigCount c = 1;
    for (std::int64_t i = 1; i <= j; ++i) {
        c *= n - j + i;
        c /= i;  // exact: C(n-j+i, i) is an integer
    }
    return c;
}

using Composition = std::vector<std::int64_t>;  // k nonnegative parts summing to n

inline BigCount multinomial(std::int64_t n, const Composition& parts) {
    const std::int64_t sum = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
    if (sum != n) throw std::invalid_argument("multinomial: parts must sum to n");
    BigCount m = 1;
    std::int64_t cum = 0;
    for (std::int64_t p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        cum += p;
        m *= binomial(cum, p);
    }
    return m;
}

/// Streaming range over the weak compositions of n into k ordered parts,
/// in lexicographic order: (0,...,0,n) first, (n,0,...,0) last. Count is
/// C(n+k-1, k-1). Nothing is materialized beyond the current tuple.
class CompositionRange {
public:
    CompositionRange(std::int64_t n, int k) : n_(n), k_(k) {
        if (n < 0 || k < 1) throw std::invalid_argument("compositions: need n >= 0, k >= 1");
    }

    class iterator {
    public:
        using value_type = Composition;
        using reference = const Composition&;

        iterator() = default;
        iterator(std::int64_t n, int k) : current_(static_cast<std::size_t>(k), 0) {
            current_.back() = n;
        }

        reference operator*() const { return current_; }
        const Composition* operator->() const { return &current_; }

        iterator& operator++() {
            // lex successor: bump the rightmost non-final position with a
            // nonempty tail, then push the remainder to the last slot
            const std::size_t k = current_.size();
            std::int64_t tail = current_[k - 1];
            std::size_t j = k - 1;
            while (j > 0 && tail == 0) tail += current_[--j];
            if (j == 0) {
                done_ = true;
                return *this;
            }
            ++current_[j - 1];
            for (std::size_t i = j; i < k; ++i) current_[i] = 0;
            current_[k - 1] = tail - 1;
            return *this;
        }

        friend bool operator==(const iterator& a, const iterator& b) {
            if (a.done_ != b.done_) return false;
            return a.done_ || a.current_ == b.current_;
        }

    private:
        Composition current_;
        bool done_ = true;  // default-constructed is the end sentinel
        friend class CompositionRange;
    };

    iterator begin() const {
        iterator it(n_, k_);
        it.done_ = false;
        return it;
    }
    iterator end() const { return iterator{}; }

private:
    std::int64_t n_;
    int k_;
};

inline CompositionRange compositions(std::int64_t n, int k) { return {n, k}; }

/// f_2(n) = C(2n, n), the central binomial coefficient.
inline BigCount count_binary(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("count_binary: n must be >= 0");
    return binomial(2 * n, n);
}

/// Memoized (k, n) -> f_k(n) cache. Lookups and inserts are guarded by a
/// mutex, so one table may be shared across threads.
class CountTable {
public:
    const BigCount* find(int k, std::int64_t n) const {
        std::lock_guard lock(mutex_);
        auto it = entries_.find({k, n});
        return it == entries_.end() ? nullptr : &it->second;
    }

    void store(int k, std::int64_t n, BigCount value) {
        std::lock_guard lock(mutex_);
        entries_.insert_or_assign({k, n}, std::move(value));
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::pair<int, std::int64_t>, BigCount> entries_;
};

/// f_k(n) = sum_{0<=j<=n} C(n,j)^2 f_{k-1}(j), with f_1(n) = 1 and
/// f_k(0) = 1. Memoizes every intermediate (k', j) in the table.
inline BigCount count_recurrence(int k, std::int64_t n, CountTable& table) {
    if (k < 1) throw std::invalid_argument("count_recurrence: k must be >= 1");
    if (n < 0) throw std::invalid_argument("count_recurrence: n must be >= 0");
    if (k == 1 || n == 0) return 1;
    if (const BigCount* hit = table.find(k, n)) return *hit;

    BigCount total = 0;
    BigCount binom = 1;  // C(n, j), updated incrementally
    for (std::int64_t j = 0; j <= n; ++j) {
        total += binom * binom * count_recurrence(k - 1, j, table);
        binom *= n - j;
        binom /= j + 1;
    }
    table.store(k, n, total);
    return total;
}

/// f_{k1+k2}(n) = sum_{0<=i<=n} C(n,i)^2 f_{k1}(i) f_{k2}(n-i).
inline BigCount count_split(int k1, int k2, std::int64_t n, CountTable& table) {
    if (k1 < 1 || k2 < 1) throw std::invalid_argument("count_split: k1, k2 must be >= 1");
    if (n < 0) throw std::invalid_argument("count_split: n must be >= 0");
    BigCount total = 0;
    BigCount binom = 1;
    for (std::int64_t i = 0; i <= n; ++i) {
        total += binom * binom * count_recurrence(k1, i, table) *
                 count_recurrence(k2, n - i, table);
        binom *= n - i;
        binom /= i + 1;
    }
    return total;
}

namespace detail {
// Descends through the parts of a composition, carrying the running
// multinomial prefix C(placed, p_1) C(placed - p_1, p_2) ... so each leaf
// costs one multiply instead of a full multinomial evaluation.
inline void multinomial_square_sum(std::int64_t remaining, int parts_left,
                                   const BigCount& prefix, BigCount& total) {
    if (parts_left == 1) {
        // last part is forced to `remaining`; its binomial factor is C(remaining, remaining) = 1
        total += prefix * prefix;
        return;
    }
    BigCount binom = 1;  // C(remaining, p)
    for (std::int64_t p = 0; p <= remaining; ++p) {
        multinomial_square_sum(remaining - p, parts_left - 1, prefix * binom, total);
        binom *= remaining - p;
        binom /= p + 1;
    }
}

// Same walk with fixed-width arithmetic for the dense small-(k, n) range:
// prefixes stay in 128 bits and squares accumulate into 256 bits, so no
// leaf allocates. Valid only when count_multinomial has proved the bounds.
inline void multinomial_square_sum_small(std::int64_t remaining, int parts_left,
                                         unsigned __int128 prefix,
                                         boost::multiprecision::uint256_t& total) {
    if (parts_left == 1) {
        const boost::multiprecision::uint256_t t(prefix);
        total += t * t;
        return;
    }
    unsigned __int128 binom = 1;
    for (std::int64_t p = 0; p <= remaining; ++p) {
        multinomial_square_sum_small(remaining - p, parts_left - 1, prefix * binom, total);
        binom *= static_cast<unsigned __int128>(remaining - p);
        binom /= static_cast<unsigned __int128>(p + 1);
    }
}
}  // namespace detail

/// f_k(n) as the sum of multinomial(n; n_1..n_k)^2 over all weak
/// compositions of n into k parts, streamed without materializing them.
inline BigCount count_multinomial(int k, std::int64_t n) {
    if (k < 1) throw std::invalid_argument("count_multinomial: k must be >= 1");
    if (n < 0) throw std::invalid_argument("count_multinomial: n must be >= 0");
    // every multinomial is <= k^n and the total is <= k^(2n); with
    // n log2(k) <= 126 both fit the fixed-width walk
    if (static_cast<double>(n) * std::log2(static_cast<double>(k)) <= 126.0) {
        boost::multiprecision::uint256_t total = 0;
        detail::multinomial_square_sum_small(n, k, 1, total);
        return BigCount(total);
    }
    BigCount total = 0;
    detail::multinomial_square_sum(n, k, 1, total);
    return total;
}

enum class Method { Auto, Recurrence, Split, Multinomial, Binary };

inline Method method_from_string(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "recurrence") return Method::Recurrence;
    if (s == "split") return Method::Split;
    if (s == "multinomial") return Method::Multinomial;
    if (s == "binary") return Method::Binary;
    throw std::invalid_argument("unknown method: " + s);
}

/// f_k(n) by the requested method. Auto uses the recurrence; with verify
/// set it also evaluates an independent route and fails loudly on any
/// mismatch rather than returning either value.
inline BigCount count(int k, std::int64_t n, CountTable& table, Method method = Method::Auto,
                      bool verify = false) {
    if (k < 1) throw std::invalid_argument("count: k must be >= 1");
    if (n < 0) throw std::invalid_argument("count: n must be >= 0");

    switch (method) {
        case Method::Binary:
            if (k != 2) throw std::invalid_argument("count: method binary requires k = 2");
            return count_binary(n);
        case Method::Recurrence:
            return count_recurrence(k, n, table);
        case Method::Split:
            if (k < 2) throw std::invalid_argument("count: method split requires k >= 2");
            return count_split(k / 2, k - k / 2, n, table);
        case Method::Multinomial:
            return count_multinomial(k, n);
        case Method::Auto:
            break;
    }

    BigCount value = count_recurrence(k, n, table);
    if (verify) {
        const BigCount other =
            k >= 2 ? count_split(k / 2, k - k / 2, n, table) : count_multinomial(k, n);
        if (other != value)
            throw VerificationError("count: recurrence and cross-check disagree at k=" +
                                    std::to_string(k) + ", n=" + std::to_string(n));
    }
    return value;
}

}  // namespace absq::counting
