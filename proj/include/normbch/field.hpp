#ifndef NORMBCH_FIELD_HPP
#define NORMBCH_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nbch {

/// Packed element of a prime-power field: the coordinate vector over GF(p),
/// read as a base-p number with coordinate 0 as the least significant digit.
struct Elem {
    std::uint64_t value = 0;
    auto operator<=>(const Elem&) const = default;
};

/// Largest field (number of elements) the library will build.
inline constexpr std::uint64_t kFieldSizeBudget = std::uint64_t{1} << 32;
/// Fields up to this size carry discrete log / antilog tables.
inline constexpr std::uint64_t kTableBudget = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// GF(p^k) realized as GF(p)[x]/(f) with f monic primitive. Immutable after
/// construction and shared through std::shared_ptr<const Field>.
class Field {
public:
    /// Field with the lexicographically smallest monic primitive modulus
    /// (coefficients compared c0 first). The class of x is the primitive element.
    static std::shared_ptr<const Field> make(std::uint64_t p, unsigned degree);

    /// Field with a caller-chosen modulus (c0..ck, monic). The modulus must be
    /// primitive, since the class of x doubles as the primitive element.
    static std::shared_ptr<const Field> with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus);

    /// Parses `p=<p> deg=<k> modulus=<c0,...,ck>`.
    static std::shared_ptr<const Field> parse(const std::string& text);
    std::string describe() const;

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return degree_; }
    std::uint64_t size() const { return size_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool has_tables() const { return !antilog_.empty(); }
    bool same_as(const Field& other) const;

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    Elem primitive() const { return primitive_; }
    /// Prime-subfield element c mod p.
    Elem scalar(std::int64_t c) const;
    bool contains(Elem x) const { return x.value < size_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem scale(std::uint32_t c, Elem a) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t exponent) const;

    /// primitive()^k.
    Elem exp(std::uint64_t k) const;
    /// Discrete log base primitive(); throws on zero.
    std::uint64_t log(Elem a) const;

    std::vector<std::uint32_t> coords(Elem a) const;
    Elem from_coords(std::span<const std::uint32_t> c) const;

    /// True iff a^(p^sub_degree) == a, i.e. a lies in GF(p^sub_degree).
    bool in_subfield(Elem a, unsigned sub_degree) const;
    /// True iff a lies in the prime field GF(p).
    bool in_prime_field(Elem a) const { return in_subfield(a, 1); }

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem a) const;

    std::string format(Elem a) const;
    Elem parse_elem(const std::string& text) const;

private:
    Field(std::uint64_t p, std::vector<std::uint32_t> modulus);
    Elem mul_slow(Elem a, Elem b) const;
    void check(Elem a) const;

    std::uint64_t p_;
    unsigned degree_;
    std::uint64_t size_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint64_t> digit_weight_;
    Elem primitive_;
    std::vector<std::uint64_t> antilog_;
    std::vector<std::uint64_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Element bundled with its owning field; arithmetic between elements of
/// different fields throws std::invalid_argument.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem e);

    const FieldPtr& field() const { return field_; }
    Elem raw() const { return e_; }
    bool is_zero() const { return e_.value == 0; }
    std::vector<std::uint32_t> coords() const { return field_->coords(e_); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const { return {field_, field_->neg(e_)}; }
    FieldElement inv() const { return {field_, field_->inv(e_)}; }
    FieldElement pow(std::uint64_t k) const { return {field_, field_->pow(e_, k)}; }

    bool operator==(const FieldElement& o) const;
    std::string to_string() const { return field_->format(e_); }

private:
    const Field& common(const FieldElement& o) const;

    FieldPtr field_;
    Elem e_;
};

/// Bases h of GF(q^m) and g of GF(q^mu) over GF(q), mu = s(d-2),
/// s = ceil(m/(d-2)). g_1..g_s span the copy of GF(q^s) inside GF(q^mu).
struct BasisPair {
    FieldPtr code_field;  // GF(q^m)
    FieldPtr big_field;   // GF(q^mu)
    unsigned d = 0;
    unsigned m = 0;
    unsigned s = 0;
    unsigned mu = 0;
    std::vector<Elem> h;
    std::vector<Elem> g;
    std::vector<std::vector<std::uint32_t>> to_g;  // standard coords -> g coords

    /// Coordinate embedding sum(a_i h_i) -> sum(a_i g_i).
    Elem hat(Elem x) const;
    /// Norm from GF(q^mu) down to GF(q^s): x^(1 + q^s + ... + q^((d-3)s)).
    Elem norm(Elem x) const;
    std::uint64_t norm_exponent() const;
    std::vector<std::uint32_t> g_coords(Elem y) const;
};

BasisPair make_basis_pair(std::uint64_t q, unsigned m, unsigned d);
BasisPair make_basis_pair(FieldPtr code_field, unsigned d);

}  // namespace nbch

#endif  // NORMBCH_FIELD_HPP
