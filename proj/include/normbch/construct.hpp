#ifndef NORMBCH_CONSTRUCT_HPP
#define NORMBCH_CONSTRUCT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normbch/field.hpp"

namespace nbch {

/// One hypothesis check of validate_params.
struct Violation {
    std::string code;     // short identifier, e.g. "q_ge_d_minus_1"
    std::string message;  // human readable explanation
};

struct CodeParams {
    std::uint32_t q = 0;
    unsigned m = 0;
    unsigned d = 0;
    bool relaxed = false;
    unsigned s = 0;
    unsigned mu = 0;
    std::uint64_t n = 0;
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
    /// False when the field tower or matrix alphabet cannot be built at all,
    /// regardless of the theorem hypotheses.
    bool buildable() const;
    /// q^m - (d-3)m - ceil(m/(d-2)) - 1.
    std::int64_t dimension_lower_bound() const;
};

/// Checks every hypothesis and records each failure; never throws.
CodeParams validate_params(std::uint32_t q, unsigned m, unsigned d, bool relaxed = false);

/// Position j in [1, n] carries e^j for j < n and 0 at position n.
class LocatorTable {
public:
    explicit LocatorTable(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    std::uint64_t size() const { return locators_.size(); }
    Elem locator(std::uint64_t position) const;
    std::uint64_t position(Elem x) const;

private:
    FieldPtr field_;
    std::vector<Elem> locators_;
    std::vector<std::uint64_t> position_of_;
};

std::shared_ptr<const LocatorTable> build_locators(const CodeParams& params);

enum class BlockKind { ones, power, norm };

struct RowBlock {
    BlockKind kind;
    unsigned power = 0;  // t for power blocks
    std::size_t rows = 0;
};

/// Parity-check matrix over GF(q), stored row-major.
class ParityCheckMatrix {
public:
    ParityCheckMatrix(std::uint32_t q, std::size_t n, std::vector<RowBlock> blocks);

    std::uint32_t q() const { return q_; }
    std::size_t cols() const { return n_; }
    std::size_t rows() const { return r_; }
    const std::vector<RowBlock>& blocks() const { return blocks_; }

    std::uint8_t at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
    void set(std::size_t row, std::size_t col, std::uint32_t v);
    const std::vector<std::uint8_t>& entries() const { return entries_; }
    std::vector<std::uint32_t> column(std::size_t col) const;

    const std::shared_ptr<const LocatorTable>& locators() const { return locators_; }
    void attach_locators(std::shared_ptr<const LocatorTable> loc) { locators_ = std::move(loc); }

    std::string blocks_spec() const;
    /// Text form: header line then one line of space-separated digits per row.
    std::string serialize() const;
    static ParityCheckMatrix parse(const std::string& text);
    /// FNV-1a 64 over serialize().
    std::uint64_t hash() const;

    bool operator==(const ParityCheckMatrix& o) const {
        return q_ == o.q_ && n_ == o.n_ && entries_ == o.entries_ && blocks_spec() == o.blocks_spec();
    }

private:
    std::uint32_t q_;
    std::size_t n_;
    std::size_t r_;
    std::vector<RowBlock> blocks_;
    std::vector<std::uint8_t> entries_;
    std::shared_ptr<const LocatorTable> locators_;
};

/// Extended BCH code C_q^m(d-1): all-ones row, then e_j^t for t = 1..d-3 in basis h.
ParityCheckMatrix bch_matrix(const CodeParams& params);
/// bch_matrix rows plus the s g-coordinates of N(hat(e_j)). Rejects d == 3.
ParityCheckMatrix augmented_matrix(const CodeParams& params);

struct Codeword {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> support;       // strictly increasing positions in [1, n]
    std::vector<std::uint32_t> coefficients;  // nonzero, aligned with support

    std::size_t weight() const { return support.size(); }
    /// Sorts by position and checks the invariants.
    static Codeword make(std::uint64_t n, std::vector<std::pair<std::uint64_t, std::uint32_t>> entries,
                         std::uint32_t q);
    /// Scales so the first coefficient is 1.
    Codeword normalized(std::uint32_t q) const;

    std::string serialize() const;
    static Codeword parse(const std::string& text, std::uint32_t q);

    auto operator<=>(const Codeword&) const = default;
};

std::vector<std::uint32_t> syndrome(const ParityCheckMatrix& h, const Codeword& c);
bool is_zero(const std::vector<std::uint32_t>& v);

/// Moves the symbol at locator x to the position of A + B x.
Codeword apply_affine_permutation(const Codeword& c, Elem a, Elem b, const LocatorTable& loc);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace nbch

#endif  // NORMBCH_CONSTRUCT_HPP
