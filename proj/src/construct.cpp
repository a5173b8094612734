#include "normbch/construct.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "normbch/budget.hpp"
#include "normbch/gf_linalg.hpp"

namespace nbch {

namespace {

constexpr std::uint32_t kMaxAlphabet = 251;
constexpr std::uint64_t kMaxCodeLength = std::uint64_t{1} << 24;

// t! saturated at `cap`.
std::uint64_t factorial_capped(unsigned t, std::uint64_t cap) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= t; ++i) {
        if (f > cap / i) return cap;
        f *= i;
    }
    return f;
}

// q^k, or 0 once it passes `cap`.
std::uint64_t power_capped(std::uint64_t q, unsigned k, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > cap / q) return 0;
        r *= q;
    }
    return r;
}

const char* const kStructural[] = {"q_prime", "d_ge_3", "m_positive", "alphabet", "budget"};

}  // namespace

bool CodeParams::buildable() const {
    return std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
        return std::find(std::begin(kStructural), std::end(kStructural), v.code) != std::end(kStructural);
    });
}

std::int64_t CodeParams::dimension_lower_bound() const {
    return static_cast<std::int64_t>(n) - static_cast<std::int64_t>((d - 3) * m) - static_cast<std::int64_t>(s) - 1;
}

CodeParams validate_params(std::uint32_t q, unsigned m, unsigned d, bool relaxed) {
    CodeParams p;
    p.q = q;
    p.m = m;
    p.d = d;
    p.relaxed = relaxed;
    auto fail = [&](std::string code, std::string msg) { p.violations.push_back({std::move(code), std::move(msg)}); };

    if (!is_prime(q)) fail("q_prime", "q = " + std::to_string(q) + " is not prime (prime alphabets only)");
    if (q > kMaxAlphabet) fail("alphabet", "q = " + std::to_string(q) + " exceeds the matrix alphabet limit 251");
    if (d < 3) fail("d_ge_3", "d = " + std::to_string(d) + " must be at least 3");
    if (m == 0) fail("m_positive", "m must be positive");
    if (q < 2 || d < 3 || m == 0) return p;

    p.s = (m + (d - 2) - 1) / (d - 2);
    p.mu = p.s * (d - 2);
    const std::uint64_t n = power_capped(q, m, kMaxCodeLength);
    const std::uint64_t big = power_capped(q, p.mu, kFieldSizeBudget);
    if (n == 0 || big == 0)
        fail("budget", "q^m or q^mu exceeds the size budget");
    p.n = n;

    const std::uint64_t t = d - 3;
    if (q <= t) fail("char_gt_d_minus_3", "char GF(q) = " + std::to_string(q) + " must exceed d-3 = " + std::to_string(t));
    if ((d - 2) % q == 0) fail("q_not_dividing_d_minus_2", "q = " + std::to_string(q) + " divides d-2 = " + std::to_string(d - 2));
    if (q + 1 < d) fail("q_ge_d_minus_1", "q = " + std::to_string(q) + " is below d-1 = " + std::to_string(d - 1));

    const std::uint64_t fact = factorial_capped(d - 3, std::uint64_t{1} << 40);
    if (relaxed) {
        for (unsigned div = 2; div <= m; ++div) {
            if (m % div == 0 && div <= fact) {
                fail("m_admissible", "divisor " + std::to_string(div) + " of m = " + std::to_string(m) +
                                         " is not above (d-3)! = " + std::to_string(fact));
                break;
            }
        }
    } else if (!is_prime(m) || m <= fact) {
        fail("m_admissible", "m = " + std::to_string(m) + " must be a prime above (d-3)! = " + std::to_string(fact));
    }
    return p;
}

// ---------------------------------------------------------------------------

LocatorTable::LocatorTable(FieldPtr field) : field_(std::move(field)) {
    const std::uint64_t n = field_->size();
    locators_.resize(n);
    position_of_.assign(n, 0);
    for (std::uint64_t j = 1; j < n; ++j) locators_[j - 1] = field_->exp(j);
    locators_[n - 1] = field_->zero();
    for (std::uint64_t j = 1; j <= n; ++j) position_of_[locators_[j - 1].value] = j;
}

Elem LocatorTable::locator(std::uint64_t position) const {
    if (position < 1 || position > locators_.size()) throw std::out_of_range("position out of range");
    return locators_[position - 1];
}

std::uint64_t LocatorTable::position(Elem x) const {
    if (!field_->contains(x)) throw std::out_of_range("element does not belong to the locator field");
    return position_of_[x.value];
}

std::shared_ptr<const LocatorTable> build_locators(const CodeParams& params) {
    if (!params.buildable()) throw std::invalid_argument("parameters cannot be built");
    return std::make_shared<const LocatorTable>(Field::make(params.q, params.m));
}

// ---------------------------------------------------------------------------

ParityCheckMatrix::ParityCheckMatrix(std::uint32_t q, std::size_t n, std::vector<RowBlock> blocks)
    : q_(q), n_(n), r_(0), blocks_(std::move(blocks)) {
    if (q < 2 || q > kMaxAlphabet) throw std::invalid_argument("matrix alphabet out of range");
    for (const auto& b : blocks_) r_ += b.rows;
    entries_.assign(r_ * n_, 0);
}

void ParityCheckMatrix::set(std::size_t row, std::size_t col, std::uint32_t v) {
    if (row >= r_ || col >= n_) throw std::out_of_range("matrix index out of range");
    entries_[row * n_ + col] = static_cast<std::uint8_t>(v % q_);
}

std::vector<std::uint32_t> ParityCheckMatrix::column(std::size_t col) const {
    std::vector<std::uint32_t> c(r_);
    for (std::size_t i = 0; i < r_; ++i) c[i] = at(i, col);
    return c;
}

std::string ParityCheckMatrix::blocks_spec() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& b = blocks_[i];
        out << (i ? "," : "");
        switch (b.kind) {
            case BlockKind::ones: out << "ones"; break;
            case BlockKind::power: out << "pow" << b.power; break;
            case BlockKind::norm: out << "norm"; break;
        }
        out << ':' << b.rows;
    }
    return out.str();
}

std::string ParityCheckMatrix::serialize() const {
    std::string out = "q=" + std::to_string(q_) + " n=" + std::to_string(n_) + " r=" + std::to_string(r_) +
                      " blocks=" + blocks_spec() + "\n";
    out.reserve(out.size() + r_ * n_ * 2);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (j) out += ' ';
            out += std::to_string(at(i, j));
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<RowBlock> parse_blocks(const std::string& spec) {
    std::vector<RowBlock> blocks;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("bad block spec: " + item);
        const auto name = item.substr(0, colon);
        RowBlock b{BlockKind::ones, 0, std::stoul(item.substr(colon + 1))};
        if (name == "ones") {
            b.kind = BlockKind::ones;
        } else if (name == "norm") {
            b.kind = BlockKind::norm;
        } else if (name.rfind("pow", 0) == 0 && name.size() > 3) {
            b.kind = BlockKind::power;
            b.power = static_cast<unsigned>(std::stoul(name.substr(3)));
        } else {
            throw std::invalid_argument("bad block name: " + name);
        }
        blocks.push_back(b);
    }
    return blocks;
}

}  // namespace

ParityCheckMatrix ParityCheckMatrix::parse(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("empty matrix file");
    std::istringstream hs(header);
    std::string tok;
    long long q = -1, n = -1, r = -1;
    std::string blocks;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad matrix header token: " + tok);
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        if (key == "q") q = std::stoll(val);
        else if (key == "n") n = std::stoll(val);
        else if (key == "r") r = std::stoll(val);
        else if (key == "blocks") blocks = val;
        else throw std::invalid_argument("unknown matrix header key: " + key);
    }
    if (q < 2 || n < 1 || r < 0) throw std::invalid_argument("matrix header missing q, n or r");
    auto parsed = blocks.empty() ? std::vector<RowBlock>{} : parse_blocks(blocks);
    std::size_t total = 0;
    for (const auto& b : parsed) total += b.rows;
    if (parsed.empty() && r > 0) {
        parsed.push_back({BlockKind::ones, 0, static_cast<std::size_t>(r)});  // unlabeled rows
        total = static_cast<std::size_t>(r);
    }
    if (total != static_cast<std::size_t>(r)) throw std::invalid_argument("block rows do not sum to r");

    ParityCheckMatrix h(static_cast<std::uint32_t>(q), static_cast<std::size_t>(n), std::move(parsed));
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::string line;
        if (!std::getline(in, line)) throw std::invalid_argument("matrix file truncated");
        std::istringstream ls(line);
        for (std::size_t j = 0; j < h.cols(); ++j) {
            long long v;
            if (!(ls >> v)) throw std::invalid_argument("matrix row too short");
            if (v < 0 || v >= q) throw std::invalid_argument("matrix entry out of range");
            h.set(i, j, static_cast<std::uint32_t>(v));
        }
        long long extra;
        if (ls >> extra) throw std::invalid_argument("matrix row too long");
    }
    return h;
}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("budget exceeded: " + std::to_string(required) + " cases required, budget " +
                         std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t ParityCheckMatrix::hash() const { return fnv1a64(serialize()); }

// ---------------------------------------------------------------------------

namespace {

void fill_bch_rows(ParityCheckMatrix& h, const CodeParams& params, const LocatorTable& loc) {
    const Field& f = *loc.field();
    const std::size_t n = h.cols();
    for (std::size_t j = 0; j < n; ++j) {
        h.set(0, j, 1);
        const Elem x = loc.locator(j + 1);
        Elem xt = x;
        std::size_t row = 1;
        for (unsigned t = 1; t + 3 <= params.d; ++t) {
            const auto c = f.coords(xt);
            for (unsigned i = 0; i < params.m; ++i) h.set(row++, j, c[i]);
            xt = f.mul(xt, x);
        }
    }
}

std::vector<RowBlock> bch_blocks(const CodeParams& params) {
    std::vector<RowBlock> blocks{{BlockKind::ones, 0, 1}};
    for (unsigned t = 1; t + 3 <= params.d; ++t) blocks.push_back({BlockKind::power, t, params.m});
    return blocks;
}

}  // namespace

ParityCheckMatrix bch_matrix(const CodeParams& params) {
    if (!params.buildable()) throw std::invalid_argument("parameters cannot be built");
    auto loc = build_locators(params);
    ParityCheckMatrix h(params.q, static_cast<std::size_t>(params.n), bch_blocks(params));
    fill_bch_rows(h, params, *loc);
    h.attach_locators(std::move(loc));
    return h;
}

ParityCheckMatrix augmented_matrix(const CodeParams& params) {
    if (!params.buildable()) throw std::invalid_argument("parameters cannot be built");
    if (params.d == 3) throw std::invalid_argument("d = 3 needs no norm rows; use bch_matrix");
    auto loc = build_locators(params);
    const BasisPair bp = make_basis_pair(loc->field(), params.d);

    auto blocks = bch_blocks(params);
    blocks.push_back({BlockKind::norm, 0, bp.s});
    ParityCheckMatrix h(params.q, static_cast<std::size_t>(params.n), std::move(blocks));
    fill_bch_rows(h, params, *loc);

    const std::size_t base = h.rows() - bp.s;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        const auto c = bp.g_coords(bp.norm(bp.hat(loc->locator(j + 1))));
        for (unsigned i = bp.s; i < bp.mu; ++i)
            if (c[i] != 0) throw std::logic_error("norm value left the GF(q^s) prefix of basis g");
        for (unsigned i = 0; i < bp.s; ++i) h.set(base + i, j, c[i]);
    }
    h.attach_locators(std::move(loc));
    return h;
}

// ---------------------------------------------------------------------------

Codeword Codeword::make(std::uint64_t n, std::vector<std::pair<std::uint64_t, std::uint32_t>> entries,
                        std::uint32_t q) {
    std::sort(entries.begin(), entries.end());
    Codeword c;
    c.n = n;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto [pos, coef] = entries[i];
        if (pos < 1 || pos > n) throw std::out_of_range("codeword position out of range");
        if (i && entries[i - 1].first == pos) throw std::invalid_argument("repeated codeword position");
        if (coef == 0 || coef >= q) throw std::invalid_argument("codeword coefficient must be a nonzero symbol");
        c.support.push_back(pos);
        c.coefficients.push_back(coef);
    }
    return c;
}

Codeword Codeword::normalized(std::uint32_t q) const {
    if (coefficients.empty()) return *this;
    Codeword out = *this;
    const std::uint64_t f = gf::inv_mod(coefficients.front(), q);
    for (auto& v : out.coefficients) v = static_cast<std::uint32_t>(v * f % q);
    return out;
}

std::string Codeword::serialize() const {
    std::string out = "n=" + std::to_string(n) + "\n";
    for (std::size_t i = 0; i < support.size(); ++i)
        out += std::to_string(support[i]) + " " + std::to_string(coefficients[i]) + "\n";
    return out;
}

Codeword Codeword::parse(const std::string& text, std::uint32_t q) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0) throw std::invalid_argument("codeword file needs n=<n> header");
    const std::uint64_t n = std::stoull(header.substr(2));
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    std::uint64_t pos;
    std::uint32_t coef;
    while (in >> pos >> coef) entries.emplace_back(pos, coef);
    return make(n, std::move(entries), q);
}

std::vector<std::uint32_t> syndrome(const ParityCheckMatrix& h, const Codeword& c) {
    if (c.n != h.cols()) throw std::invalid_argument("codeword length does not match the matrix");
    const std::uint32_t q = h.q();
    std::vector<std::uint32_t> s(h.rows(), 0);
    for (std::size_t k = 0; k < c.support.size(); ++k) {
        const auto pos = c.support[k];
        if (pos < 1 || pos > h.cols()) throw std::out_of_range("codeword position out of range");
        for (std::size_t i = 0; i < h.rows(); ++i)
            s[i] = static_cast<std::uint32_t>((s[i] + std::uint64_t{c.coefficients[k]} * h.at(i, pos - 1)) % q);
    }
    return s;
}

bool is_zero(const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

Codeword apply_affine_permutation(const Codeword& c, Elem a, Elem b, const LocatorTable& loc) {
    const Field& f = *loc.field();
    if (b.value == 0) throw std::invalid_argument("affine permutation needs B != 0");
    if (!f.contains(a) || !f.contains(b)) throw std::out_of_range("affine coefficients outside the locator field");
    if (c.n != loc.size()) throw std::invalid_argument("codeword length does not match the locator table");
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    for (std::size_t i = 0; i < c.support.size(); ++i) {
        const Elem y = f.add(a, f.mul(b, loc.locator(c.support[i])));
        entries.emplace_back(loc.position(y), c.coefficients[i]);
    }
    return Codeword::make(c.n, std::move(entries), static_cast<std::uint32_t>(f.characteristic()));
}

}  // namespace nbch
