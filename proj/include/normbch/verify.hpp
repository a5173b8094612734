#ifndef NORMBCH_VERIFY_HPP
#define NORMBCH_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normbch/budget.hpp"
#include "normbch/construct.hpp"

namespace nbch {

inline constexpr std::uint64_t kDefaultSubsetBudget = 20'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct DistanceCertificate {
    std::uint64_t matrix_hash = 0;
    unsigned d = 0;
    std::uint64_t subsets_total = 0;
    std::uint64_t subsets_examined = 0;
    bool certified = false;
    std::optional<Codeword> counterexample;
    double seconds = 0;
    unsigned threads = 1;

    /// Run metadata (threads, seconds) is left out when with_run_info is false.
    std::string to_text(bool with_run_info = true) const;
    std::string to_json(bool with_run_info = true) const;
};

/// Certifies distance >= d by checking that every d-1 columns of H are
/// linearly independent over GF(q). Subsets are visited in colex order and
/// the reported counterexample is the first dependent subset in that order,
/// independent of the thread count.
DistanceCertificate min_distance_at_least(const ParityCheckMatrix& h, unsigned d,
                                          std::uint64_t budget = kDefaultSubsetBudget, unsigned threads = 1);

/// All codewords of weight exactly w, one per scalar class (first coefficient 1),
/// sorted.
std::vector<Codeword> enumerate_weight_words(const ParityCheckMatrix& h, unsigned w,
                                             std::uint64_t budget = kDefaultSubsetBudget, unsigned threads = 1);

struct AffineLine {
    Elem a;
    Elem b;
    std::vector<std::uint32_t> lambdas;

    /// a + lambda_i b == x_i for all i.
    bool reproduces(const Field& f, std::span<const Elem> x) const;
};

/// Normalizes pi(x_{w-1}) = 1, pi(x_w) = 0 and tests whether every other
/// locator maps into GF(q). Throws on w < 3 or repeated locators.
std::optional<AffineLine> on_affine_line(const Field& f, std::span<const Elem> x);

struct LineViolation {
    Codeword word;
    std::vector<Elem> locators;
};

struct LinesReport {
    CodeParams params;
    bool hypotheses_hold = false;
    std::uint64_t words = 0;     // weight-(d-1) words up to scalar
    std::uint64_t supports = 0;  // distinct supports among them
    std::uint64_t on_lines = 0;
    std::vector<LineViolation> violations;
    std::uint64_t subsets = 0;
    double seconds = 0;
    unsigned threads = 1;

    std::string to_text(bool with_run_info = true) const;
    std::string to_json(bool with_run_info = true) const;
};

/// Enumerates the weight-(d-1) words of C_q^m(d-1) and checks each locator
/// set for an affine line. With `experimental` the hypotheses are not enforced
/// (only buildability), and the outcome is reported, not asserted.
LinesReport verify_lines_theorem(const CodeParams& params, std::uint64_t budget = kDefaultSubsetBudget,
                                 unsigned threads = 1, bool experimental = false);

struct WeightWitness {
    std::vector<std::uint32_t> lambdas;  // scalar locators, in support order of the system
    Codeword word;
    std::vector<std::uint32_t> bch_syndrome;
    std::vector<std::uint32_t> augmented_syndrome;
};

/// Weight-(d-1) word of C on the locators (2, 3, ..., d-2, 1, 0) with the
/// coefficient at locator 0 fixed to 1.
WeightWitness construct_weight_word(const CodeParams& params);

/// Whether sum_i xi_i lambda_i^t == 0 for all t = 0..size-1. Throws on repeated
/// lambdas or zero xis.
bool vandermonde_check(std::span<const std::uint32_t> lambdas, std::span<const std::uint32_t> xis, std::uint32_t q);

}  // namespace nbch

#endif  // NORMBCH_VERIFY_HPP
