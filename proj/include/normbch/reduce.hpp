#ifndef NORMBCH_REDUCE_HPP
#define NORMBCH_REDUCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normbch/budget.hpp"

namespace nbch {

inline constexpr std::uint64_t kDefaultShiftBudget = 10'000'000;

using Word = std::vector<std::uint32_t>;

/// Explicit code over Z_q (componentwise addition mod q is the group law).
struct ExplicitCode {
    std::uint32_t q = 0;
    std::size_t n = 0;
    std::vector<Word> words;

    /// Checks lengths, symbol range and distinctness.
    static ExplicitCode make(std::uint32_t q, std::vector<Word> words);
    /// One word per line, symbols separated by spaces. Blank lines are ignored.
    static ExplicitCode parse(const std::string& text, std::uint32_t q);
    std::string serialize() const;

    std::size_t size() const { return words.size(); }
    /// Minimum pairwise Hamming distance; nullopt for fewer than two words.
    std::optional<std::size_t> min_distance() const;
};

enum class ReduceMode { exhaustive, sampled };

struct ReductionResult {
    ReduceMode mode = ReduceMode::exhaustive;
    Word shift;
    ExplicitCode code;  // (V + shift) restricted to the subset, re-encoded to [0, q1)
    std::vector<std::uint32_t> subset;
    double average = 0;            // q1^n |V| / q2^n
    std::uint64_t guaranteed = 0;  // ceil(average); exhaustive mode only
    std::uint64_t shifts_examined = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> distance_before;
    std::optional<std::size_t> distance_after;
    bool distances_computed = false;

    std::string to_text() const;
    std::string to_json() const;
};

/// Shifts V by some v so that (V + v) meets subset^n in at least the average
/// number of words. Exhaustive mode visits every shift (ties go to the
/// lexicographically smallest); sampled mode takes the best of `trials`
/// seeded random shifts and claims no guarantee.
ReductionResult reduce_alphabet(const ExplicitCode& v, std::vector<std::uint32_t> subset, ReduceMode mode,
                                std::uint64_t trials = 0, std::uint64_t seed = 1,
                                std::uint64_t budget = kDefaultShiftBudget, unsigned threads = 1);

/// Sum over all q2^n shifts v of |(V + v) ∩ subset^n|.
std::uint64_t shift_intersection_total(const ExplicitCode& v, const std::vector<std::uint32_t>& subset,
                                       std::uint64_t budget = kDefaultShiftBudget);

/// Both sides of the redundancy-ratio identity for the shifted subcode:
/// (n - log_{q1}(q1^n |V| / q2^n)) / log_{q1} n  and  (n - log_{q2} |V|) / log_{q2} n.
std::pair<long double, long double> redundancy_ratio_identity(std::uint64_t n, std::uint64_t q1, std::uint64_t q2,
                                                              long double size_v);

}  // namespace nbch

#endif  // NORMBCH_REDUCE_HPP
