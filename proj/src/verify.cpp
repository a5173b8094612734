#include "normbch/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "normbch/gf_linalg.hpp"
#include "parallel.hpp"

namespace nbch {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Column-major copy of H with GF(q) lookup tables.
struct ColumnData {
    std::uint32_t q;
    std::size_t rows;
    std::size_t n;
    std::vector<std::uint8_t> cols;
    std::vector<std::uint8_t> mul;
    std::vector<std::uint8_t> inv;

    explicit ColumnData(const ParityCheckMatrix& h) : q(h.q()), rows(h.rows()), n(h.cols()) {
        cols.resize(rows * n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < rows; ++i) cols[j * rows + i] = h.at(i, j);
        mul.resize(q * q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) mul[a * q + b] = static_cast<std::uint8_t>(a * b % q);
        inv.assign(q, 0);
        for (std::uint32_t a = 1; a < q; ++a) inv[a] = static_cast<std::uint8_t>(gf::inv_mod(a, q));
    }

    const std::uint8_t* col(std::size_t j) const { return cols.data() + j * rows; }
};

// Incremental elimination over a stack of columns. Depth i holds the i-th
// added column reduced against the independent ones before it, with the
// combination of original columns that produced it.
class EliminationStack {
public:
    EliminationStack(const ColumnData& data, std::size_t depth)
        : data_(data), k_(depth), vec_(depth * data.rows), combo_(depth * depth), pivot_(depth, -1) {}

    // Returns true when the column is independent of the independent columns
    // already on the stack below `i`.
    bool push(std::size_t i, std::size_t column) {
        const std::uint32_t q = data_.q;
        const std::size_t r = data_.rows;
        std::uint8_t* w = &vec_[i * r];
        std::uint8_t* cm = &combo_[i * k_];
        std::copy_n(data_.col(column), r, w);
        std::fill_n(cm, k_, 0);
        cm[i] = 1;
        for (std::size_t l = 0; l < i; ++l) {
            const int p = pivot_[l];
            if (p < 0 || w[p] == 0) continue;
            const std::uint8_t* row = &data_.mul[(q - w[p]) * q];
            const std::uint8_t* v = &vec_[l * r];
            for (std::size_t x = 0; x < r; ++x) w[x] = add(w[x], row[v[x]]);
            const std::uint8_t* c = &combo_[l * k_];
            for (std::size_t y = 0; y <= l; ++y) cm[y] = add(cm[y], row[c[y]]);
        }
        std::size_t p = 0;
        while (p < r && w[p] == 0) ++p;
        if (p == r) {
            pivot_[i] = -1;
            return false;
        }
        const std::uint8_t* scale = &data_.mul[data_.inv[w[p]] * q];
        for (std::size_t x = 0; x < r; ++x) w[x] = scale[w[x]];
        for (std::size_t y = 0; y <= i; ++y) cm[y] = scale[cm[y]];
        pivot_[i] = static_cast<int>(p);
        return true;
    }

    // Kernel vector found at a dependent depth, indexed by depth.
    const std::uint8_t* combo(std::size_t i) const { return &combo_[i * k_]; }

private:
    std::uint8_t add(std::uint32_t a, std::uint32_t b) const {
        const std::uint32_t s = a + b;
        return static_cast<std::uint8_t>(s >= data_.q ? s - data_.q : s);
    }

    const ColumnData& data_;
    std::size_t k_;
    std::vector<std::uint8_t> vec_;
    std::vector<std::uint8_t> combo_;
    std::vector<int> pivot_;
};

// Contiguous ranges of the largest subset element, balanced by subset count.
std::vector<std::pair<std::size_t, std::size_t>> partition_top(std::size_t n, std::size_t k, unsigned parts) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const std::uint64_t total = binomial(n, k);
    std::size_t lo = k - 1;
    std::uint64_t acc = 0;
    for (unsigned part = 1; part <= parts; ++part) {
        const auto target = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * part / parts);
        std::size_t hi = lo;
        while (hi < n && (acc < target || part == parts)) acc += binomial(hi++, k - 1);
        ranges.emplace_back(lo, hi);
        lo = hi;
    }
    return ranges;
}

unsigned effective_threads(unsigned threads) { return std::max(1u, threads); }

}  // namespace

// ---------------------------------------------------------------------------

DistanceCertificate min_distance_at_least(const ParityCheckMatrix& h, unsigned d, std::uint64_t budget,
                                          unsigned threads) {
    if (d < 2) throw std::invalid_argument("distance bound must be at least 2");
    const auto start = Clock::now();
    threads = effective_threads(threads);
    const std::size_t n = h.cols();
    // A code shorter than d has distance >= d only if it is {0}: all n columns independent.
    const std::size_t k = std::min<std::size_t>(d - 1, n);
    const std::uint64_t total = binomial(n, k);
    if (total > budget) throw BudgetExceeded(total, budget);

    DistanceCertificate cert;
    cert.matrix_hash = h.hash();
    cert.d = d;
    cert.subsets_total = total;
    cert.threads = threads;

    const ColumnData data(h);
    const auto ranges = partition_top(n, k, threads);
    std::atomic<std::size_t> found_chunk{std::numeric_limits<std::size_t>::max()};
    struct Hit {
        std::uint64_t rank = 0;
        std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    };
    std::vector<std::optional<Hit>> hits(ranges.size());

    detail::run_workers(static_cast<unsigned>(ranges.size()), [&](unsigned chunk) {
        EliminationStack stack(data, k);
        std::vector<std::size_t> pos(k);
        const auto [top_lo, top_hi] = ranges[chunk];
        auto dfs = [&](auto&& self, std::size_t i, std::size_t lo, std::size_t hi) -> bool {
            for (std::size_t c = lo; c < hi; ++c) {
                if (i == 0 && found_chunk.load(std::memory_order_relaxed) < chunk) return true;
                pos[i] = c;
                if (!stack.push(i, c)) {
                    Hit hit;
                    for (std::size_t j = 0; j <= i; ++j) hit.rank += binomial(pos[j], k - j);
                    const std::uint8_t* cm = stack.combo(i);
                    for (std::size_t y = 0; y <= i; ++y)
                        if (cm[y]) hit.entries.emplace_back(pos[y] + 1, cm[y]);
                    hits[chunk] = std::move(hit);
                    std::size_t expected = found_chunk.load();
                    while (chunk < expected && !found_chunk.compare_exchange_weak(expected, chunk)) {
                    }
                    return true;
                }
                if (i + 1 < k && self(self, i + 1, k - 2 - i, c)) return true;
            }
            return false;
        };
        dfs(dfs, 0, top_lo, top_hi);
    });

    cert.certified = true;
    cert.subsets_examined = total;
    for (auto& hit : hits) {
        if (!hit) continue;
        cert.certified = false;
        cert.subsets_examined = hit->rank + 1;
        cert.counterexample = Codeword::make(n, std::move(hit->entries), h.q()).normalized(h.q());
        break;
    }
    cert.seconds = seconds_since(start);
    return cert;
}

std::vector<Codeword> enumerate_weight_words(const ParityCheckMatrix& h, unsigned w, std::uint64_t budget,
                                             unsigned threads) {
    const std::size_t n = h.cols();
    if (w == 0 || w > n) return {};
    const std::uint64_t total = binomial(n, w);
    if (total > budget) throw BudgetExceeded(total, budget);
    threads = effective_threads(threads);

    const std::uint32_t q = h.q();
    const ColumnData data(h);
    const auto ranges = partition_top(n, w, threads);
    std::vector<std::vector<Codeword>> found(ranges.size());

    detail::run_workers(static_cast<unsigned>(ranges.size()), [&](unsigned chunk) {
        EliminationStack stack(data, w);
        std::vector<std::size_t> pos(w);
        auto emit = [&] {
            // Ascending positions: pos is stored largest first.
            std::vector<std::size_t> cols(pos.rbegin(), pos.rend());
            gf::Matrix sub(data.rows, gf::Row(w));
            for (std::size_t i = 0; i < data.rows; ++i)
                for (std::size_t j = 0; j < w; ++j) sub[i][j] = data.col(cols[j])[i];
            const gf::Matrix basis = gf::kernel(std::move(sub), w, q);
            const std::size_t dim = basis.size();
            // Projective points: coefficient tuples whose first nonzero entry is 1.
            std::vector<std::uint32_t> a(dim, 0);
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < dim; ++i) count *= q;
            for (std::uint64_t idx = 1; idx < count; ++idx) {
                std::uint64_t rest = idx;
                for (std::size_t i = 0; i < dim; ++i, rest /= q) a[i] = static_cast<std::uint32_t>(rest % q);
                const auto lead = std::find_if(a.begin(), a.end(), [](std::uint32_t v) { return v != 0; });
                if (*lead != 1) continue;
                std::vector<std::uint32_t> v(w, 0);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < w; ++j) v[j] = static_cast<std::uint32_t>((v[j] + a[i] * basis[i][j]) % q);
                if (std::any_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; })) continue;
                std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
                for (std::size_t j = 0; j < w; ++j) entries.emplace_back(cols[j] + 1, v[j]);
                found[chunk].push_back(Codeword::make(n, std::move(entries), q).normalized(q));
            }
        };
        auto dfs = [&](auto&& self, std::size_t i, std::size_t lo, std::size_t hi, bool deficient) -> void {
            for (std::size_t c = lo; c < hi; ++c) {
                pos[i] = c;
                const bool dep = !stack.push(i, c) || deficient;
                if (i + 1 == w) {
                    if (dep) emit();
                } else {
                    self(self, i + 1, w - 2 - i, c, dep);
                }
            }
        };
        const auto [top_lo, top_hi] = ranges[chunk];
        dfs(dfs, 0, top_lo, top_hi, false);
    });

    std::vector<Codeword> out;
    for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

bool AffineLine::reproduces(const Field& f, std::span<const Elem> x) const {
    if (b.value == 0 || lambdas.size() != x.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (f.add(a, f.scale(lambdas[i], b)) != x[i]) return false;
    return true;
}

std::optional<AffineLine> on_affine_line(const Field& f, std::span<const Elem> x) {
    const std::size_t w = x.size();
    if (w < 3) throw std::invalid_argument("affine line test needs at least 3 locators");
    std::vector<Elem> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("locators must be pairwise distinct");

    AffineLine line;
    line.a = x[w - 1];
    line.b = f.sub(x[w - 2], x[w - 1]);
    const Elem b_inv = f.inv(line.b);
    for (const Elem xi : x) {
        const Elem lambda = f.mul(f.sub(xi, line.a), b_inv);
        if (!f.in_prime_field(lambda)) return std::nullopt;
        line.lambdas.push_back(static_cast<std::uint32_t>(lambda.value));
    }
    return line;
}

LinesReport verify_lines_theorem(const CodeParams& params, std::uint64_t budget, unsigned threads,
                                 bool experimental) {
    if (!params.buildable()) throw std::invalid_argument("parameters cannot be built");
    if (!experimental && !params.valid()) {
        std::string msg = "line theorem hypotheses fail:";
        for (const auto& v : params.violations) msg += " " + v.code;
        throw std::invalid_argument(msg);
    }
    const auto start = Clock::now();
    const unsigned w = params.d - 1;
    const std::uint64_t total = binomial(params.n, w);
    if (total > budget) throw BudgetExceeded(total, budget);

    LinesReport report;
    report.params = params;
    report.hypotheses_hold = params.valid();
    report.threads = effective_threads(threads);
    report.subsets = total;

    const ParityCheckMatrix h = bch_matrix(params);
    const LocatorTable& loc = *h.locators();
    const Field& f = *loc.field();
    const auto words = enumerate_weight_words(h, w, budget, threads);
    report.words = words.size();
    std::set<std::vector<std::uint64_t>> supports;
    for (const auto& c : words) {
        supports.insert(c.support);
        std::vector<Elem> x;
        for (auto pos : c.support) x.push_back(loc.locator(pos));
        const bool on_line = w < 3 || on_affine_line(f, x).has_value();
        if (on_line)
            ++report.on_lines;
        else
            report.violations.push_back({c, std::move(x)});
    }
    report.supports = supports.size();
    report.seconds = seconds_since(start);
    return report;
}

WeightWitness construct_weight_word(const CodeParams& params) {
    if (!params.valid()) throw std::invalid_argument("construct_weight_word needs valid parameters");
    if (params.d < 4) throw std::invalid_argument("construct_weight_word needs d >= 4");
    const std::uint32_t q = params.q;
    const unsigned d = params.d;

    WeightWitness wit;
    for (std::uint32_t l = 2; wit.lambdas.size() < d - 3; ++l) wit.lambdas.push_back(l);

    // Unknowns xi_1..xi_{d-2} on locators (lambda_1..lambda_{d-3}, 1); xi_{d-1} = 1 on locator 0.
    std::vector<std::uint32_t> y = wit.lambdas;
    y.push_back(1);
    const std::size_t u = d - 2;
    gf::Matrix a(u, gf::Row(u));
    gf::Row rhs(u, 0);
    for (std::size_t t = 0; t < u; ++t) {
        for (std::size_t i = 0; i < u; ++i) {
            std::uint64_t v = 1;
            for (std::size_t e = 0; e < t; ++e) v = v * y[i] % q;
            a[t][i] = static_cast<std::uint32_t>(v);
        }
    }
    rhs[0] = q - 1;
    const auto xi = gf::solve(std::move(a), rhs, q);
    if (!xi) throw std::logic_error("locator system is singular");

    const ParityCheckMatrix h = bch_matrix(params);
    const LocatorTable& loc = *h.locators();
    const Field& f = *loc.field();
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    for (std::size_t i = 0; i < u; ++i) {
        if ((*xi)[i] == 0) throw std::logic_error("locator system produced a zero coefficient");
        entries.emplace_back(loc.position(f.scalar(y[i])), (*xi)[i]);
    }
    entries.emplace_back(loc.position(f.zero()), 1);
    wit.word = Codeword::make(params.n, std::move(entries), q);
    wit.bch_syndrome = syndrome(h, wit.word);
    wit.augmented_syndrome = syndrome(augmented_matrix(params), wit.word);
    return wit;
}

bool vandermonde_check(std::span<const std::uint32_t> lambdas, std::span<const std::uint32_t> xis, std::uint32_t q) {
    if (lambdas.size() != xis.size() || lambdas.empty()) throw std::invalid_argument("lambda and xi lists must match");
    std::vector<std::uint32_t> sorted(lambdas.begin(), lambdas.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("lambdas must be pairwise distinct");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] >= q) throw std::invalid_argument("lambda outside GF(q)");
        if (xis[i] % q == 0) throw std::invalid_argument("xi must be nonzero");
    }
    std::vector<std::uint64_t> powers(xis.begin(), xis.end());  // xi_i lambda_i^t
    for (std::size_t t = 0; t < lambdas.size(); ++t) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            sum += powers[i] % q;
            powers[i] = powers[i] % q * lambdas[i] % q;
        }
        if (sum % q != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

std::string entries_text(const Codeword& c) {
    std::string s;
    for (std::size_t i = 0; i < c.support.size(); ++i)
        s += (i ? "," : "") + std::to_string(c.support[i]) + ":" + std::to_string(c.coefficients[i]);
    return s;
}

nlohmann::json codeword_json(const Codeword& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["support"] = c.support;
    j["coefficients"] = c.coefficients;
    return j;
}

}  // namespace

std::string DistanceCertificate::to_text(bool with_run_info) const {
    std::ostringstream out;
    out << "matrix_hash=" << hex64(matrix_hash) << "\n"
        << "d=" << d << "\n"
        << "subsets_total=" << subsets_total << "\n"
        << "subsets_examined=" << subsets_examined << "\n"
        << "verdict=" << (certified ? "certified" : "counterexample") << "\n";
    if (counterexample) {
        out << "counterexample_weight=" << counterexample->weight() << "\n"
            << "counterexample=" << entries_text(*counterexample) << "\n";
    }
    if (with_run_info) out << "threads=" << threads << "\nseconds=" << seconds << "\n";
    return out.str();
}

std::string DistanceCertificate::to_json(bool with_run_info) const {
    nlohmann::json j;
    j["matrix_hash"] = hex64(matrix_hash);
    j["d"] = d;
    j["subsets_total"] = subsets_total;
    j["subsets_examined"] = subsets_examined;
    j["verdict"] = certified ? "certified" : "counterexample";
    if (counterexample) j["counterexample"] = codeword_json(*counterexample);
    if (with_run_info) {
        j["threads"] = threads;
        j["seconds"] = seconds;
    }
    return j.dump(2);
}

std::string LinesReport::to_text(bool with_run_info) const {
    std::ostringstream out;
    out << "q=" << params.q << "\nm=" << params.m << "\nd=" << params.d << "\n"
        << "hypotheses=" << (hypotheses_hold ? "hold" : "fail") << "\n"
        << "subsets=" << subsets << "\n"
        << "words=" << words << "\n"
        << "supports=" << supports << "\n"
        << "on_lines=" << on_lines << "\n"
        << "violations=" << violations.size() << "\n";
    for (const auto& v : violations) out << "violation=" << entries_text(v.word) << "\n";
    if (with_run_info) out << "threads=" << threads << "\nseconds=" << seconds << "\n";
    return out.str();
}

std::string LinesReport::to_json(bool with_run_info) const {
    nlohmann::json j;
    j["q"] = params.q;
    j["m"] = params.m;
    j["d"] = params.d;
    j["hypotheses_hold"] = hypotheses_hold;
    j["subsets"] = subsets;
    j["words"] = words;
    j["supports"] = supports;
    j["on_lines"] = on_lines;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : violations) j["violations"].push_back(codeword_json(v.word));
    if (with_run_info) {
        j["threads"] = threads;
        j["seconds"] = seconds;
    }
    return j.dump(2);
}

}  // namespace nbch
