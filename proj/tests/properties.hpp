// Randomized property suites shared by the unit tests and the acceptance binary.
#ifndef NORMBCH_TESTS_PROPERTIES_HPP
#define NORMBCH_TESTS_PROPERTIES_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "normbch/construct.hpp"
#include "normbch/field.hpp"
#include "normbch/gf_linalg.hpp"
#include "normbch/verify.hpp"
#include "oracles.hpp"

namespace props {

inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr int kCases = 1000;

struct Outcome {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return cases >= kCases && failures == 0; }
};

struct Triple {
    std::uint32_t q;
    unsigned m, d;
};

// Parameter sets with q >= d - 1, covering s = 1 and s = 2.
inline const std::vector<Triple>& triples() {
    static const std::vector<Triple> t{{5, 2, 4}, {5, 3, 5}, {5, 3, 4}, {7, 2, 5}, {3, 2, 4}, {7, 3, 4}};
    return t;
}

inline const std::vector<nbch::BasisPair>& basis_pairs() {
    static const std::vector<nbch::BasisPair> bp = [] {
        std::vector<nbch::BasisPair> v;
        for (const auto& t : triples()) v.push_back(nbch::make_basis_pair(t.q, t.m, t.d));
        return v;
    }();
    return bp;
}

inline nbch::Elem random_elem(const nbch::Field& f, std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<std::uint64_t> dist(nonzero ? 1 : 0, f.size() - 1);
    return nbch::Elem{dist(rng)};
}

// norm(xy) = norm(x) norm(y); norm(x) lies in GF(q^s); agrees with the
// schoolbook power computed by the oracle.
inline Outcome norm_multiplicative(std::uint64_t seed = kSeed) {
    std::mt19937_64 rng(seed);
    Outcome out;
    const auto& bps = basis_pairs();
    for (int i = 0; i < kCases; ++i, ++out.cases) {
        const auto& bp = bps[static_cast<std::size_t>(i) % bps.size()];
        const auto& F = *bp.big_field;
        std::vector<std::int64_t> modulus(F.modulus().begin(), F.modulus().end());
        const oracle::PolyField of{static_cast<std::int64_t>(F.characteristic()), modulus};
        const nbch::Elem x = random_elem(F, rng), y = random_elem(F, rng);
        const nbch::Elem nx = bp.norm(x), ny = bp.norm(y);
        const std::uint64_t qs = [&] {
            std::uint64_t v = 1;
            for (unsigned k = 0; k < bp.s; ++k) v *= F.characteristic();
            return v;
        }();
        std::uint64_t expo = 0, term = 1;
        for (unsigned t = 0; t + 2 < bp.d; ++t, term *= qs) expo += term;
        if (bp.norm(F.mul(x, y)) != F.mul(nx, ny)) out.fail("norm(xy) != norm(x)norm(y)");
        if (!F.in_subfield(nx, bp.s)) out.fail("norm(x) outside GF(q^s)");
        if (nx.value != of.to_int(of.pow(of.from_int(x.value), expo))) out.fail("norm disagrees with oracle power");
    }
    return out;
}

// hat(a + lambda b) = hat(a) + lambda hat(b).
inline Outcome hat_linear(std::uint64_t seed = kSeed) {
    std::mt19937_64 rng(seed + 1);
    Outcome out;
    const auto& bps = basis_pairs();
    for (int i = 0; i < kCases; ++i, ++out.cases) {
        const auto& bp = bps[static_cast<std::size_t>(i) % bps.size()];
        const auto& C = *bp.code_field;
        const auto& F = *bp.big_field;
        const std::uint32_t q = static_cast<std::uint32_t>(C.characteristic());
        const nbch::Elem a = random_elem(C, rng), b = random_elem(C, rng);
        const std::uint32_t lam = std::uniform_int_distribution<std::uint32_t>(0, q - 1)(rng);
        const nbch::Elem lhs = bp.hat(C.add(a, C.scale(lam, b)));
        const nbch::Elem rhs = F.add(bp.hat(a), F.scale(lam, bp.hat(b)));
        if (lhs != rhs) out.fail("hat not linear");
        // Direct definition: sum of coordinates times g_i.
        nbch::Elem direct = F.zero();
        const auto c = C.coords(a);
        for (std::size_t k = 0; k < c.size(); ++k) direct = F.add(direct, F.scale(c[k], bp.g[k]));
        if (direct != bp.hat(a)) out.fail("hat(a) != sum a_i g_i");
    }
    return out;
}

// Coefficients (low first) of the polynomial through (lambda, values[lambda]),
// lambda = 0..q-1, over the big field.
inline std::vector<nbch::Elem> interpolate(const nbch::Field& F, std::uint32_t q, const std::vector<nbch::Elem>& values) {
    std::vector<nbch::Elem> coeff(q, F.zero());
    for (std::uint32_t i = 0; i < q; ++i) {
        // prod_{j != i} (x - j) over GF(q), and its value at i.
        std::vector<std::int64_t> basis{1};
        std::int64_t denom = 1;
        for (std::uint32_t j = 0; j < q; ++j) {
            if (j == i) continue;
            std::vector<std::int64_t> next(basis.size() + 1, 0);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] = oracle::mod(next[k + 1] + basis[k], q);
                next[k] = oracle::mod(next[k] - static_cast<std::int64_t>(j) * basis[k], q);
            }
            basis = next;
            denom = oracle::mod(denom * (static_cast<std::int64_t>(i) - j), q);
        }
        const std::int64_t dinv = oracle::inv_mod(denom, q);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto c = static_cast<std::uint32_t>(oracle::mod(basis[k] * dinv, q));
            coeff[k] = F.add(coeff[k], F.scale(c, values[i]));
        }
    }
    return coeff;
}

// lambda -> norm(hat(a) + lambda hat(b)) has degree exactly d-2 with leading
// coefficient norm(hat(b)).
inline Outcome norm_interpolation(std::uint64_t seed = kSeed) {
    std::mt19937_64 rng(seed + 2);
    Outcome out;
    const auto& bps = basis_pairs();
    for (int i = 0; i < kCases; ++i, ++out.cases) {
        const auto& bp = bps[static_cast<std::size_t>(i) % bps.size()];
        const auto& C = *bp.code_field;
        const auto& F = *bp.big_field;
        const std::uint32_t q = static_cast<std::uint32_t>(C.characteristic());
        const nbch::Elem ah = bp.hat(random_elem(C, rng));
        const nbch::Elem bh = bp.hat(random_elem(C, rng, true));
        std::vector<nbch::Elem> values;
        for (std::uint32_t lam = 0; lam < q; ++lam) values.push_back(bp.norm(F.add(ah, F.scale(lam, bh))));
        const auto coeff = interpolate(F, q, values);
        std::size_t deg = 0;
        for (std::size_t k = 0; k < coeff.size(); ++k)
            if (coeff[k] != F.zero()) deg = k;
        if (deg != bp.d - 2) {
            std::ostringstream os;
            os << "degree " << deg << " != d-2 = " << bp.d - 2;
            out.fail(os.str());
        } else if (coeff[deg] != bp.norm(bh)) {
            out.fail("leading coefficient != norm(b)");
        }
    }
    return out;
}

// Oracle syndrome: H c over GF(q) straight from the entries.
inline bool oracle_in_code(const nbch::ParityCheckMatrix& h, const std::vector<std::uint32_t>& dense) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < h.cols(); ++j) acc += static_cast<std::int64_t>(h.at(r, j)) * dense[j];
        if (acc % h.q() != 0) return false;
    }
    return true;
}

inline nbch::Codeword from_dense(const std::vector<std::uint32_t>& dense, std::uint32_t q) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> e;
    for (std::size_t j = 0; j < dense.size(); ++j)
        if (dense[j]) e.emplace_back(j + 1, dense[j]);
    return nbch::Codeword::make(dense.size(), e, q);
}

inline std::vector<std::uint32_t> to_dense(const nbch::Codeword& c) {
    std::vector<std::uint32_t> v(c.n, 0);
    for (std::size_t i = 0; i < c.support.size(); ++i) v[c.support[i] - 1] = c.coefficients[i];
    return v;
}

// Affine permutations x -> A + Bx map C to itself, and map weight-(d-1) words
// on lines to words on lines.
inline Outcome affine_invariance(std::uint64_t seed = kSeed) {
    std::mt19937_64 rng(seed + 3);
    Outcome out;
    struct Instance {
        nbch::ParityCheckMatrix h;
        nbch::gf::Matrix kernel;
        std::vector<nbch::Codeword> min_words;
    };
    std::vector<Instance> inst;
    for (const Triple t : {Triple{5, 2, 4}, Triple{7, 2, 4}, Triple{5, 3, 5}}) {
        const auto params = nbch::validate_params(t.q, t.m, t.d);
        auto h = nbch::bch_matrix(params);
        nbch::gf::Matrix a(h.rows(), nbch::gf::Row(h.cols()));
        for (std::size_t r = 0; r < h.rows(); ++r)
            for (std::size_t c = 0; c < h.cols(); ++c) a[r][c] = h.at(r, c);
        auto ker = nbch::gf::kernel(a, h.cols(), t.q);
        auto words = nbch::enumerate_weight_words(h, t.d - 1);
        inst.push_back({std::move(h), std::move(ker), std::move(words)});
    }
    for (int i = 0; i < kCases; ++i, ++out.cases) {
        const auto& in = inst[static_cast<std::size_t>(i) % inst.size()];
        const auto& loc = *in.h.locators();
        const auto& f = *loc.field();
        const std::uint32_t q = in.h.q();
        std::uniform_int_distribution<std::uint32_t> sym(0, q - 1);
        std::vector<std::uint32_t> dense(in.h.cols(), 0);
        for (const auto& kv : in.kernel) {
            const std::uint32_t c = sym(rng);
            for (std::size_t j = 0; j < dense.size(); ++j) dense[j] = (dense[j] + c * kv[j]) % q;
        }
        const nbch::Elem a = random_elem(f, rng), b = random_elem(f, rng, true);
        const auto word = from_dense(dense, q);
        const auto moved = nbch::apply_affine_permutation(word, a, b, loc);
        if (!oracle_in_code(in.h, to_dense(moved))) out.fail("permuted codeword left the code");
        if (moved.weight() != word.weight()) out.fail("permutation changed the weight");

        if (in.min_words.empty()) {
            out.fail("no weight-(d-1) words");
            continue;
        }
        const auto& mw = in.min_words[std::uniform_int_distribution<std::size_t>(0, in.min_words.size() - 1)(rng)];
        const auto mv = nbch::apply_affine_permutation(mw, a, b, loc);
        std::vector<nbch::Elem> x0, x1;
        for (auto pos : mw.support) x0.push_back(loc.locator(pos));
        for (auto pos : mv.support) x1.push_back(loc.locator(pos));
        if (!oracle_in_code(in.h, to_dense(mv))) out.fail("permuted weight-(d-1) word left the code");
        if (nbch::on_affine_line(f, x0).has_value() != nbch::on_affine_line(f, x1).has_value())
            out.fail("line membership not preserved");
    }
    return out;
}

// Distinct lambdas and nonzero xis never satisfy the full Vandermonde system.
inline Outcome vandermonde_never_zero(std::uint64_t seed = kSeed) {
    std::mt19937_64 rng(seed + 4);
    Outcome out;
    const std::vector<std::uint32_t> primes{3, 5, 7, 11, 13};
    for (int i = 0; i < kCases; ++i, ++out.cases) {
        const std::uint32_t q = primes[static_cast<std::size_t>(i) % primes.size()];
        std::vector<std::uint32_t> all(q);
        std::iota(all.begin(), all.end(), 0u);
        std::shuffle(all.begin(), all.end(), rng);
        const std::size_t w = std::uniform_int_distribution<std::size_t>(1, q)(rng);
        std::vector<std::uint32_t> lambdas(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(w)), xis(w);
        for (auto& x : xis) x = std::uniform_int_distribution<std::uint32_t>(1, q - 1)(rng);
        if (nbch::vandermonde_check(lambdas, xis, q)) out.fail("vandermonde_check returned true");
    }
    return out;
}

}  // namespace props

#endif  // NORMBCH_TESTS_PROPERTIES_HPP
