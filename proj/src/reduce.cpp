#include "normbch/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "parallel.hpp"

namespace nbch {

namespace {

// Pairwise distance is quadratic in |V|; skip it beyond this size.
constexpr std::size_t kDistanceWordLimit = 4000;

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
    unsigned __int128 r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > budget) throw BudgetExceeded(static_cast<std::uint64_t>(std::min<unsigned __int128>(r, UINT64_MAX)), budget);
    }
    return static_cast<std::uint64_t>(r);
}

// Shift counter: |(V + v) ∩ S^n| for shifts encoded base q2, first coordinate
// most significant (integer order == lexicographic order).
class ShiftCounter {
public:
    ShiftCounter(const ExplicitCode& v, const std::vector<std::uint32_t>& subset, std::uint64_t space)
        : code_(v), subset_(subset), in_subset_(v.q, false) {
        for (auto s : subset_) in_subset_[s] = true;
        // space == 0: shift space not enumerated (sampled mode), so no membership table.
        q1n_ = 1;
        for (std::size_t i = 0; i < v.n && space; ++i) q1n_ *= subset_.size();
        iterate_words_ = space == 0 || v.size() <= q1n_;
        if (!iterate_words_) {
            member_.assign(space, false);
            for (const auto& w : v.words) member_[encode(w)] = true;
        }
    }

    Word decode(std::uint64_t idx) const {
        Word w(code_.n);
        for (std::size_t i = code_.n; i-- > 0;) {
            w[i] = static_cast<std::uint32_t>(idx % code_.q);
            idx /= code_.q;
        }
        return w;
    }

    std::uint64_t encode(const Word& w) const {
        std::uint64_t idx = 0;
        for (auto s : w) idx = idx * code_.q + s;
        return idx;
    }

    std::uint64_t count(const Word& shift) const {
        const std::uint32_t q = code_.q;
        std::uint64_t hits = 0;
        if (iterate_words_) {
            for (const auto& w : code_.words) {
                bool ok = true;
                for (std::size_t i = 0; i < code_.n && ok; ++i) ok = in_subset_[(w[i] + shift[i]) % q];
                hits += ok;
            }
            return hits;
        }
        // Walk f over S^n and test f - shift in V.
        std::vector<std::size_t> digit(code_.n, 0);
        for (std::uint64_t t = 0; t < q1n_; ++t) {
            std::uint64_t idx = 0;
            for (std::size_t i = 0; i < code_.n; ++i) idx = idx * q + (subset_[digit[i]] + q - shift[i]) % q;
            hits += member_[idx];
            for (std::size_t i = code_.n; i-- > 0;) {
                if (++digit[i] < subset_.size()) break;
                digit[i] = 0;
            }
        }
        return hits;
    }

private:
    const ExplicitCode& code_;
    const std::vector<std::uint32_t>& subset_;
    std::vector<bool> in_subset_;
    std::vector<bool> member_;
    std::uint64_t q1n_ = 1;
    bool iterate_words_ = true;
};

std::vector<std::uint32_t> checked_subset(const ExplicitCode& v, std::vector<std::uint32_t> subset) {
    std::sort(subset.begin(), subset.end());
    if (subset.empty()) throw std::invalid_argument("subset must not be empty");
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw std::invalid_argument("subset symbols must be distinct");
    if (subset.back() >= v.q) throw std::invalid_argument("subset symbol outside the alphabet");
    return subset;
}

}  // namespace

ExplicitCode ExplicitCode::make(std::uint32_t q, std::vector<Word> words) {
    if (q < 1) throw std::invalid_argument("alphabet must not be empty");
    ExplicitCode c;
    c.q = q;
    c.n = words.empty() ? 0 : words.front().size();
    for (const auto& w : words) {
        if (w.size() != c.n) throw std::invalid_argument("codewords must share one length");
        for (auto s : w)
            if (s >= q) throw std::invalid_argument("symbol outside the alphabet");
    }
    auto sorted = words;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("codewords must be distinct");
    c.words = std::move(words);
    return c;
}

ExplicitCode ExplicitCode::parse(const std::string& text, std::uint32_t q) {
    std::vector<Word> words;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Word w;
        long long s;
        while (ls >> s) {
            if (s < 0) throw std::invalid_argument("negative symbol");
            w.push_back(static_cast<std::uint32_t>(s));
        }
        if (!ls.eof()) throw std::invalid_argument("unparsable codeword line: " + line);
        if (!w.empty()) words.push_back(std::move(w));
    }
    return make(q, std::move(words));
}

std::string ExplicitCode::serialize() const {
    std::string out;
    for (const auto& w : words) {
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + std::to_string(w[i]);
        out += '\n';
    }
    return out;
}

std::optional<std::size_t> ExplicitCode::min_distance() const {
    if (words.size() < 2) return std::nullopt;
    std::size_t best = n;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            std::size_t dist = 0;
            for (std::size_t i = 0; i < n; ++i) dist += words[a][i] != words[b][i];
            best = std::min(best, dist);
        }
    return best;
}

ReductionResult reduce_alphabet(const ExplicitCode& v, std::vector<std::uint32_t> subset, ReduceMode mode,
                                std::uint64_t trials, std::uint64_t seed, std::uint64_t budget, unsigned threads) {
    ReductionResult res;
    res.mode = mode;
    res.seed = seed;
    res.subset = checked_subset(v, std::move(subset));
    const std::size_t n = v.n;
    const std::uint64_t q1 = res.subset.size();

    const long double log_avg = static_cast<long double>(n) * (std::log((long double)q1) - std::log((long double)v.q)) +
                                std::log(static_cast<long double>(std::max<std::size_t>(v.size(), 1)));
    res.average = v.size() == 0 ? 0.0 : static_cast<double>(std::exp(log_avg));

    std::uint64_t best_idx = 0;
    std::uint64_t best_count = 0;
    if (mode == ReduceMode::exhaustive) {
        const std::uint64_t space = checked_power(v.q, n, budget);
        unsigned __int128 num = v.size();
        for (std::size_t i = 0; i < n; ++i) num *= q1;
        res.guaranteed = static_cast<std::uint64_t>((num + space - 1) / space);

        const ShiftCounter counter(v, res.subset, space);
        const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, space));
        std::vector<std::pair<std::uint64_t, std::uint64_t>> best(workers, {0, 0});  // (count, idx)
        detail::run_workers(workers, [&](unsigned w) {
            const std::uint64_t lo = space * w / workers, hi = space * (w + 1) / workers;
            std::pair<std::uint64_t, std::uint64_t> local{0, lo};
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                const auto c = counter.count(counter.decode(idx));
                if (c > local.first) local = {c, idx};
            }
            best[w] = local;
        });
        for (const auto& [c, idx] : best)
            if (c > best_count) best_count = c, best_idx = idx;
        if (best_count == 0) best_idx = 0;
        res.shifts_examined = space;
        res.shift.assign(n, 0);
        for (std::size_t i = n; i-- > 0; best_idx /= v.q) res.shift[i] = static_cast<std::uint32_t>(best_idx % v.q);
    } else {
        if (trials == 0) throw std::invalid_argument("sampled mode needs at least one trial");
        const ShiftCounter counter(v, res.subset, 0);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> sym(0, v.q - 1);
        for (std::uint64_t t = 0; t < trials; ++t) {
            Word s(n);
            for (auto& x : s) x = sym(rng);
            const auto c = counter.count(s);
            if (t == 0 || c > best_count || (c == best_count && s < res.shift)) {
                best_count = c;
                res.shift = std::move(s);
            }
        }
        res.shifts_examined = trials;
    }

    std::vector<std::uint32_t> reencode(v.q, UINT32_MAX);
    for (std::size_t k = 0; k < res.subset.size(); ++k) reencode[res.subset[k]] = static_cast<std::uint32_t>(k);
    std::vector<Word> out;
    for (const auto& w : v.words) {
        Word x(n);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            x[i] = reencode[(w[i] + res.shift[i]) % v.q];
            ok = x[i] != UINT32_MAX;
        }
        if (ok) out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    res.code = ExplicitCode::make(static_cast<std::uint32_t>(q1), std::move(out));
    res.code.n = n;
    if (v.size() <= kDistanceWordLimit) {
        res.distances_computed = true;
        res.distance_before = v.min_distance();
        res.distance_after = res.code.min_distance();
    }
    return res;
}

std::uint64_t shift_intersection_total(const ExplicitCode& v, const std::vector<std::uint32_t>& subset,
                                       std::uint64_t budget) {
    const auto s = checked_subset(v, subset);
    const std::uint64_t space = checked_power(v.q, v.n, budget);
    const ShiftCounter counter(v, s, space);
    std::uint64_t total = 0;
    for (std::uint64_t idx = 0; idx < space; ++idx) total += counter.count(counter.decode(idx));
    return total;
}

std::pair<long double, long double> redundancy_ratio_identity(std::uint64_t n, std::uint64_t q1, std::uint64_t q2,
                                                              long double size_v) {
    if (n < 2 || q1 < 2 || q2 < 2 || !(size_v > 0)) throw std::invalid_argument("identity needs n, q1, q2 >= 2 and |V| > 0");
    const long double ln1 = std::log(static_cast<long double>(q1));
    const long double ln2 = std::log(static_cast<long double>(q2));
    const long double lnn = std::log(static_cast<long double>(n));
    const long double nn = static_cast<long double>(n);
    // log_{q1}(q1^n |V| / q2^n) = n + log_{q1}|V| - n log_{q1} q2
    const long double shifted_log = nn + std::log(size_v) / ln1 - nn * ln2 / ln1;
    const long double lhs = (nn - shifted_log) / (lnn / ln1);
    const long double rhs = (nn - std::log(size_v) / ln2) / (lnn / ln2);
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------

namespace {

std::string word_text(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

}  // namespace

std::string ReductionResult::to_text() const {
    std::ostringstream out;
    out << "mode=" << (mode == ReduceMode::exhaustive ? "exhaustive" : "sampled") << "\n"
        << "shift=" << word_text(shift) << "\n"
        << "subset=" << word_text(subset) << "\n"
        << "size=" << code.size() << "\n"
        << "average=" << average << "\n";
    if (mode == ReduceMode::exhaustive)
        out << "guaranteed=" << guaranteed << "\n";
    else
        out << "guaranteed=none\nseed=" << seed << "\n";
    out << "shifts_examined=" << shifts_examined << "\n";
    if (distances_computed) {
        out << "distance_before=" << (distance_before ? std::to_string(*distance_before) : "inf") << "\n"
            << "distance_after=" << (distance_after ? std::to_string(*distance_after) : "inf") << "\n";
    }
    return out.str();
}

std::string ReductionResult::to_json() const {
    nlohmann::json j;
    j["mode"] = mode == ReduceMode::exhaustive ? "exhaustive" : "sampled";
    j["shift"] = shift;
    j["subset"] = subset;
    j["size"] = code.size();
    j["average"] = average;
    if (mode == ReduceMode::exhaustive)
        j["guaranteed"] = guaranteed;
    else
        j["seed"] = seed;
    j["shifts_examined"] = shifts_examined;
    if (distances_computed) {
        j["distance_before"] = distance_before ? nlohmann::json(*distance_before) : nlohmann::json(nullptr);
        j["distance_after"] = distance_after ? nlohmann::json(*distance_after) : nlohmann::json(nullptr);
    }
    j["words"] = code.words;
    return j.dump(2);
}

}  // namespace nbch
