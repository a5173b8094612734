#include "normbch/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "normbch/gf_linalg.hpp"

namespace nbch {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

using Poly = std::vector<std::uint32_t>;

// Arithmetic in GF(p)[x]/(f) for a monic f of degree k, on length-k
// coefficient vectors. Used for the modulus search and for untabled fields.
struct PolyRing {
    std::uint64_t p;
    const Poly& f;  // c0..ck, ck == 1

    std::size_t k() const { return f.size() - 1; }

    Poly mul(const Poly& a, const Poly& b) const {
        const std::size_t n = k();
        std::vector<std::uint64_t> prod(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        }
        for (std::size_t i = prod.size(); i-- > n;) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                prod[i - n + j] = (prod[i - n + j] + (p - c) * f[j]) % p;
        }
        Poly out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return out;
    }

    Poly pow(Poly base, std::uint64_t e) const {
        Poly acc(k(), 0);
        acc[0] = 1;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Poly x() const {
        // Class of x; for k == 1 this is -c0.
        Poly v(k(), 0);
        if (k() == 1)
            v[0] = static_cast<std::uint32_t>((p - f[0]) % p);
        else
            v[1] = 1;
        return v;
    }

    bool x_is_primitive(std::uint64_t group_order, const std::vector<std::uint64_t>& primes) const {
        if (f[0] == 0) return false;
        Poly one(k(), 0);
        one[0] = 1;
        const Poly gen = x();
        if (pow(gen, group_order) != one) return false;
        return std::none_of(primes.begin(), primes.end(),
                            [&](std::uint64_t r) { return pow(gen, group_order / r) == one; });
    }
};

std::uint64_t checked_size(std::uint64_t p, unsigned degree) {
    std::uint64_t size = 1;
    for (unsigned i = 0; i < degree; ++i) {
        if (size > kFieldSizeBudget / p) throw std::length_error("field size budget exceeded");
        size *= p;
    }
    return size;
}

}  // namespace

Field::Field(std::uint64_t p, std::vector<std::uint32_t> modulus)
    : p_(p), degree_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    size_ = checked_size(p_, degree_);
    digit_weight_.resize(degree_);
    std::uint64_t w = 1;
    for (unsigned i = 0; i < degree_; ++i, w *= p_) digit_weight_[i] = w;
    const PolyRing ring{p_, modulus_};
    if (!ring.x_is_primitive(size_ - 1, prime_factors(size_ - 1)))
        throw std::invalid_argument("modulus is not a primitive polynomial");
    primitive_ = from_coords(ring.x());

    if (size_ <= kTableBudget) {
        antilog_.resize(size_ - 1);
        log_.assign(size_, 0);
        Elem cur = one();
        for (std::uint64_t i = 0; i + 1 < size_; ++i) {
            antilog_[i] = cur.value;
            log_[cur.value] = i;
            cur = mul_slow(cur, primitive_);
        }
    }
}

std::shared_ptr<const Field> Field::make(std::uint64_t p, unsigned degree) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    const std::uint64_t size = checked_size(p, degree);
    const auto primes = prime_factors(size - 1);

    // Candidates (c0, ..., c_{k-1}) in lexicographic order, c0 most significant.
    Poly f(degree + 1, 0);
    f[degree] = 1;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        std::uint64_t rest = idx;
        for (unsigned i = degree; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        if (f[0] == 0) continue;
        if (PolyRing{p, f}.x_is_primitive(size - 1, primes)) return std::shared_ptr<const Field>(new Field(p, f));
    }
    throw std::logic_error("no primitive polynomial found");
}

std::shared_ptr<const Field> Field::with_modulus(std::uint64_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (modulus.size() < 2) throw std::invalid_argument("modulus must have positive degree");
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (auto c : modulus)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    return std::shared_ptr<const Field>(new Field(p, std::move(modulus)));
}

std::shared_ptr<const Field> Field::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::uint64_t p = 0;
    long deg = -1;
    std::vector<std::uint32_t> mod;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad field description token: " + tok);
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        if (key == "p") {
            p = std::stoull(val);
        } else if (key == "deg") {
            deg = std::stol(val);
        } else if (key == "modulus") {
            std::istringstream cs(val);
            std::string c;
            while (std::getline(cs, c, ',')) mod.push_back(static_cast<std::uint32_t>(std::stoul(c)));
        } else {
            throw std::invalid_argument("unknown field description key: " + key);
        }
    }
    if (deg < 1 || static_cast<std::size_t>(deg) + 1 != mod.size())
        throw std::invalid_argument("field description degree does not match modulus");
    return with_modulus(p, std::move(mod));
}

std::string Field::describe() const {
    std::ostringstream out;
    out << "p=" << p_ << " deg=" << degree_ << " modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) out << (i ? "," : "") << modulus_[i];
    return out.str();
}

bool Field::same_as(const Field& other) const {
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

void Field::check(Elem a) const {
    if (a.value >= size_) throw std::out_of_range("element does not belong to this field");
}

Elem Field::scalar(std::int64_t c) const {
    const auto p = static_cast<std::int64_t>(p_);
    return Elem{static_cast<std::uint64_t>(((c % p) + p) % p)};
}

Elem Field::add(Elem a, Elem b) const {
    std::uint64_t x = a.value, y = b.value, r = 0;
    for (unsigned i = 0; i < degree_; ++i) {
        r += ((x % p_ + y % p_) % p_) * digit_weight_[i];
        x /= p_;
        y /= p_;
    }
    return Elem{r};
}

Elem Field::neg(Elem a) const {
    std::uint64_t x = a.value, r = 0;
    for (unsigned i = 0; i < degree_; ++i) {
        r += ((p_ - x % p_) % p_) * digit_weight_[i];
        x /= p_;
    }
    return Elem{r};
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::scale(std::uint32_t c, Elem a) const {
    std::uint64_t x = a.value, r = 0;
    const std::uint64_t cc = c % p_;
    for (unsigned i = 0; i < degree_; ++i) {
        r += (x % p_ * cc % p_) * digit_weight_[i];
        x /= p_;
    }
    return Elem{r};
}

Elem Field::mul_slow(Elem a, Elem b) const {
    const PolyRing ring{p_, modulus_};
    return from_coords(ring.mul(coords(a), coords(b)));
}

Elem Field::mul(Elem a, Elem b) const {
    if (a.value == 0 || b.value == 0) return zero();
    if (has_tables()) {
        const std::uint64_t k = (log_[a.value] + log_[b.value]) % (size_ - 1);
        return Elem{antilog_[k]};
    }
    return mul_slow(a, b);
}

Elem Field::inv(Elem a) const {
    if (a.value == 0) throw std::domain_error("inverse of zero");
    if (has_tables()) return Elem{antilog_[(size_ - 1 - log_[a.value]) % (size_ - 1)]};
    return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t exponent) const {
    if (exponent == 0) return one();
    if (a.value == 0) return zero();
    const std::uint64_t group = size_ - 1;
    exponent %= group;
    if (has_tables()) {
        const auto k = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(log_[a.value]) * exponent % group);
        return Elem{antilog_[k]};
    }
    Elem acc = one();
    while (exponent) {
        if (exponent & 1) acc = mul_slow(acc, a);
        a = mul_slow(a, a);
        exponent >>= 1;
    }
    return acc;
}

Elem Field::exp(std::uint64_t k) const {
    if (has_tables()) return Elem{antilog_[k % (size_ - 1)]};
    return pow(primitive_, k);
}

std::uint64_t Field::log(Elem a) const {
    if (a.value == 0) throw std::domain_error("log of zero");
    check(a);
    if (has_tables()) return log_[a.value];
    // Linear scan; untabled fields only.
    Elem cur = one();
    for (std::uint64_t k = 0; k + 1 < size_; ++k) {
        if (cur == a) return k;
        cur = mul_slow(cur, primitive_);
    }
    throw std::logic_error("log not found");
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
    check(a);
    std::vector<std::uint32_t> c(degree_);
    std::uint64_t x = a.value;
    for (unsigned i = 0; i < degree_; ++i) {
        c[i] = static_cast<std::uint32_t>(x % p_);
        x /= p_;
    }
    return c;
}

Elem Field::from_coords(std::span<const std::uint32_t> c) const {
    if (c.size() != degree_) throw std::invalid_argument("coordinate vector has wrong length");
    std::uint64_t r = 0;
    for (unsigned i = 0; i < degree_; ++i) r += (c[i] % p_) * digit_weight_[i];
    return Elem{r};
}

bool Field::in_subfield(Elem a, unsigned sub_degree) const {
    if (sub_degree == 0 || degree_ % sub_degree != 0) return false;
    std::uint64_t ps = 1;
    for (unsigned i = 0; i < sub_degree; ++i) ps *= p_;
    return pow(a, ps) == a;
}

std::uint64_t Field::order(Elem a) const {
    if (a.value == 0) throw std::domain_error("order of zero");
    std::uint64_t ord = size_ - 1;
    for (auto r : prime_factors(size_ - 1))
        while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
    return ord;
}

std::string Field::format(Elem a) const {
    const auto c = coords(a);
    std::ostringstream out;
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    return out.str();
}

Elem Field::parse_elem(const std::string& text) const {
    std::vector<std::uint32_t> c;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto v = std::stoul(tok);
        if (v >= p_) throw std::invalid_argument("element digit out of range");
        c.push_back(static_cast<std::uint32_t>(v));
    }
    return from_coords(c);
}

FieldElement::FieldElement(FieldPtr field, Elem e) : field_(std::move(field)), e_(e) {
    if (!field_) throw std::invalid_argument("null field");
    if (!field_->contains(e_)) throw std::out_of_range("element does not belong to this field");
}

const Field& FieldElement::common(const FieldElement& o) const {
    if (!field_->same_as(*o.field_)) throw std::invalid_argument("field mismatch");
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, common(o).add(e_, o.e_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, common(o).sub(e_, o.e_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, common(o).mul(e_, o.e_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const { return {field_, common(o).div(e_, o.e_)}; }

bool FieldElement::operator==(const FieldElement& o) const { return field_->same_as(*o.field_) && e_ == o.e_; }

// ---------------------------------------------------------------------------

Elem BasisPair::hat(Elem x) const {
    // h is the polynomial basis, so the h-coordinates of x are its raw coordinates.
    const auto alpha = code_field->coords(x);
    Elem acc = big_field->zero();
    for (unsigned i = 0; i < m; ++i)
        if (alpha[i]) acc = big_field->add(acc, big_field->scale(alpha[i], g[i]));
    return acc;
}

std::uint64_t BasisPair::norm_exponent() const {
    const std::uint64_t q = big_field->characteristic();
    std::uint64_t qs = 1;
    for (unsigned i = 0; i < s; ++i) qs *= q;
    std::uint64_t e = 0, term = 1;
    for (unsigned t = 0; t + 2 <= d - 1; ++t) {  // t = 0..d-3
        e += term;
        term *= qs;
    }
    return e;
}

Elem BasisPair::norm(Elem x) const { return big_field->pow(x, norm_exponent()); }

std::vector<std::uint32_t> BasisPair::g_coords(Elem y) const {
    const auto c = big_field->coords(y);
    const std::uint64_t q = big_field->characteristic();
    std::vector<std::uint32_t> out(mu, 0);
    for (unsigned i = 0; i < mu; ++i) {
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < mu; ++j) acc += std::uint64_t{to_g[i][j]} * c[j] % q;
        out[i] = static_cast<std::uint32_t>(acc % q);
    }
    return out;
}

BasisPair make_basis_pair(std::uint64_t q, unsigned m, unsigned d) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (m == 0) throw std::invalid_argument("m must be positive");
    if (d < 3) throw std::invalid_argument("d must be at least 3");
    return make_basis_pair(Field::make(q, m), d);
}

BasisPair make_basis_pair(FieldPtr code_field, unsigned d) {
    if (!code_field) throw std::invalid_argument("null field");
    if (d < 3) throw std::invalid_argument("d must be at least 3");
    BasisPair bp;
    bp.d = d;
    bp.m = code_field->degree();
    bp.s = (bp.m + (d - 2) - 1) / (d - 2);
    bp.mu = bp.s * (d - 2);
    const std::uint64_t q = code_field->characteristic();
    bp.big_field = bp.mu == bp.m ? code_field : Field::make(q, bp.mu);
    bp.code_field = std::move(code_field);
    const Field& big = *bp.big_field;

    for (unsigned i = 0; i < bp.m; ++i) bp.h.push_back(bp.code_field->exp(i));

    std::uint64_t qs = 1;
    for (unsigned i = 0; i < bp.s; ++i) qs *= q;
    // beta generates GF(q^s)* inside GF(q^mu); powers of the big primitive
    // element give a basis of GF(q^mu) over GF(q^s) starting at 1.
    const Elem beta = big.exp((big.size() - 1) / (qs - 1));
    for (unsigned j = 0; j < d - 2; ++j) {
        const Elem gamma = big.exp(j);
        for (unsigned i = 0; i < bp.s; ++i) bp.g.push_back(big.mul(big.pow(beta, i), gamma));
    }

    gf::Matrix cols(bp.mu, gf::Row(bp.mu, 0));
    for (unsigned j = 0; j < bp.mu; ++j) {
        const auto c = big.coords(bp.g[j]);
        for (unsigned i = 0; i < bp.mu; ++i) cols[i][j] = c[i];
    }
    auto inv = gf::inverse(cols, static_cast<std::uint32_t>(q));
    if (!inv) throw std::logic_error("basis g is not linearly independent");
    bp.to_g = std::move(*inv);
    return bp;
}

}  // namespace nbch
