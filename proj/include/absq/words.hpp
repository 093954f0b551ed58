#pragma once

// String-level machinery: signatures (Parikh vectors), abelian-square
// testing, factor scanning, exhaustive enumeration, and Monte Carlo
// sampling. Letters are integers 1..k.

#include <absq/bigint.hpp>
#include <absq/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace absq::words {

using Letter = int;

struct Alphabet {
    int size = 0;  // k; letters are 1..k

    explicit Alphabet(int k) : size(k) {
        if (k < 1) throw std::invalid_argument("Alphabet: size must be >= 1");
    }
};

struct Word {
    std::vector<Letter> symbols;
    Alphabet alphabet;

    Word(std::vector<Letter> s, Alphabet a) : symbols(std::move(s)), alphabet(a) {
        for (Letter c : symbols)
            if (c < 1 || c > alphabet.size)
                throw std::invalid_argument("Word: letter out of range 1..k");
    }

    std::size_t size() const { return symbols.size(); }
};

// counts[i] = occurrences of letter i+1; sums to the word length
using Signature = std::vector<std::int64_t>;

inline Signature signature(const Word& w) {
    Signature counts(static_cast<std::size_t>(w.alphabet.size), 0);
    for (Letter c : w.symbols) ++counts[static_cast<std::size_t>(c - 1)];
    return counts;
}

/// True iff |w| is even, |w| >= 2, and both halves share a signature.
inline bool is_abelian_square(const Word& w) {
    const std::size_t len = w.symbols.size();
    if (len < 2 || len % 2 != 0) return false;
    const std::size_t n = len / 2;
    std::vector<std::int64_t> diff(static_cast<std::size_t>(w.alphabet.size), 0);
    for (std::size_t i = 0; i < n; ++i) ++diff[static_cast<std::size_t>(w.symbols[i] - 1)];
    for (std::size_t i = n; i < len; ++i) --diff[static_cast<std::size_t>(w.symbols[i] - 1)];
    return std::all_of(diff.begin(), diff.end(), [](std::int64_t d) { return d == 0; });
}

struct Factor {
    std::size_t start = 0;
    std::size_t half = 0;  // factor is w[start .. start + 2*half)

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// All abelian-square factors with half-length in [min_half, max_half],
/// in lexicographic (start, half) order. max_half == nullopt means
/// unbounded. Prefix signatures make each candidate an O(k) check.
inline std::vector<Factor> scan_factors(const Word& w, std::size_t min_half,
                                        std::optional<std::size_t> max_half = std::nullopt) {
    if (min_half < 1) throw std::invalid_argument("scan_factors: min_half must be >= 1");
    if (max_half && *max_half < min_half)
        throw std::invalid_argument("scan_factors: max_half < min_half");

    const std::size_t len = w.symbols.size();
    const auto k = static_cast<std::size_t>(w.alphabet.size);
    // prefix[p][c] = occurrences of letter c+1 in w[0..p)
    std::vector<std::vector<std::int32_t>> prefix(len + 1, std::vector<std::int32_t>(k, 0));
    for (std::size_t p = 0; p < len; ++p) {
        prefix[p + 1] = prefix[p];
        ++prefix[p + 1][static_cast<std::size_t>(w.symbols[p] - 1)];
    }

    std::vector<Factor> out;
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t hi = max_half ? *max_half : len;
        for (std::size_t m = min_half; m <= hi && i + 2 * m <= len; ++m) {
            bool equal = true;
            for (std::size_t c = 0; c < k && equal; ++c) {
                const auto first = prefix[i + m][c] - prefix[i][c];
                const auto second = prefix[i + 2 * m][c] - prefix[i + m][c];
                equal = (first == second);
            }
            if (equal) out.push_back({i, m});
        }
    }
    return out;
}

/// k^(2n) as a big integer, for guard checks.
inline BigCount state_space_size(int k, int n) {
    return boost::multiprecision::pow(BigCount(k), static_cast<unsigned>(2 * n));
}

inline constexpr std::int64_t kDefaultSizeGuard = std::int64_t{1} << 31;

inline void check_size_guard(int k, int n, bool force) {
    if (force) return;
    if (state_space_size(k, n) > kDefaultSizeGuard)
        throw SizeGuardError("state space k^(2n) exceeds 2^31; pass force to override");
}

/// Calls fn once for each abelian square of length 2n over 1..k, in
/// lexicographic order. First halves run in lex order; for each, the
/// matching second halves are the multiset permutations of that half.
inline void for_each_abelian_square(int k, int n, const std::function<void(const Word&)>& fn,
                                    bool force = false) {
    if (k < 1) throw std::invalid_argument("for_each_abelian_square: k must be >= 1");
    if (n < 1) throw std::invalid_argument("for_each_abelian_square: n must be >= 1");
    check_size_guard(k, n, force);

    const Alphabet alpha(k);
    std::vector<Letter> half(static_cast<std::size_t>(n), 1);
    std::vector<Letter> whole(static_cast<std::size_t>(2 * n));
    for (;;) {
        std::copy(half.begin(), half.end(), whole.begin());
        // second halves in lex order: next_permutation from the sorted multiset
        std::vector<Letter> second = half;
        std::sort(second.begin(), second.end());
        do {
            std::copy(second.begin(), second.end(), whole.begin() + n);
            fn(Word(whole, alpha));
        } while (std::next_permutation(second.begin(), second.end()));

        // advance first half (odometer, lex order)
        int pos = n - 1;
        while (pos >= 0 && half[static_cast<std::size_t>(pos)] == k)
            half[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0) break;
        ++half[static_cast<std::size_t>(pos)];
    }
}

inline std::vector<Word> enumerate_abelian_squares(int k, int n, bool force = false) {
    std::vector<Word> out;
    for_each_abelian_square(k, n, [&](const Word& w) { out.push_back(w); }, force);
    return out;
}

/// Independent oracle: walks every string of length 2n over 1..k and
/// tests the halves directly. f_k(0) = 1 by convention (empty word).
inline BigCount brute_force_count(int k, int n, bool force = false) {
    if (k < 1) throw std::invalid_argument("brute_force_count: k must be >= 1");
    if (n < 0) throw std::invalid_argument("brute_force_count: n must be >= 0");
    if (n == 0) return 1;
    check_size_guard(k, n, force);

    const std::size_t len = static_cast<std::size_t>(2 * n);
    std::vector<Letter> s(len, 1);
    std::vector<std::int64_t> diff(static_cast<std::size_t>(k), 0);
    BigCount hits = 0;
    for (;;) {
        std::fill(diff.begin(), diff.end(), 0);
        for (std::size_t i = 0; i < len / 2; ++i) ++diff[static_cast<std::size_t>(s[i] - 1)];
        for (std::size_t i = len / 2; i < len; ++i) --diff[static_cast<std::size_t>(s[i] - 1)];
        if (std::all_of(diff.begin(), diff.end(), [](std::int64_t d) { return d == 0; })) ++hits;

        std::size_t pos = len;
        while (pos > 0 && s[pos - 1] == k) s[--pos] = 1;
        if (pos == 0) break;
        ++s[pos - 1];
    }
    return hits;
}

struct SampleResult {
    std::int64_t hits = 0;
    std::int64_t trials = 0;
    double fraction = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of the probability that a uniform string of
/// length 2n over 1..k is an abelian square. Deterministic for a given
/// (k, n, trials, seed); the generator is std::mt19937_64.
inline SampleResult sample_abelian_fraction(int k, int n, std::int64_t trials,
                                            std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_abelian_fraction: k must be >= 1");
    if (n < 1) throw std::invalid_argument("sample_abelian_fraction: n must be >= 1");
    if (trials < 1) throw std::invalid_argument("sample_abelian_fraction: trials must be >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(1, k);
    std::vector<std::int64_t> diff(static_cast<std::size_t>(k), 0);
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::fill(diff.begin(), diff.end(), 0);
        for (int i = 0; i < n; ++i) ++diff[static_cast<std::size_t>(dist(rng) - 1)];
        for (int i = 0; i < n; ++i) --diff[static_cast<std::size_t>(dist(rng) - 1)];
        if (std::all_of(diff.begin(), diff.end(), [](std::int64_t d) { return d == 0; })) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {hits, trials, p, se};
}

/// Maps text to integer letters by first-occurrence order, so "banana"
/// becomes 1,2,3,2,3,2 over k = 3. Deterministic and documented for the
/// CLI scan command.
inline Word word_from_text(const std::string& text) {
    std::vector<Letter> symbols;
    symbols.reserve(text.size());
    std::vector<int> letter_of(256, 0);
    int next = 0;
    for (unsigned char b : text) {
        if (letter_of[b] == 0) letter_of[b] = ++next;
        symbols.push_back(letter_of[b]);
    }
    return Word(std::move(symbols), Alphabet(std::max(next, 1)));
}

}  // namespace absq::words
