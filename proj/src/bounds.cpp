#include "normbch/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "normbch/gf_linalg.hpp"

namespace nbch {

namespace {

constexpr double kTie = 1e-12;

void require(std::int64_t q, std::int64_t d) {
    if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
    if (d < 3) throw std::invalid_argument("distance must be at least 3");
}

BoundValue rational_bound(Rational r, std::string label, std::string source) {
    return BoundValue{to_double(r), r, std::move(label), std::move(source)};
}

// Literature records, keyed by (q, d); q == 0 means every q.
struct Record {
    std::int64_t q;
    std::int64_t d;
    Rational value;
    const char* label;
    const char* source;
};

const Record kRecords[] = {
    {3, 4, Rational(13796, 10000), "edel_q3", "Edel, ternary caps record c(3,4) <= 1.3796"},
    {4, 4, Rational(29, 20), "glynn_q4", "Glynn, c(4,4) <= 1.45"},
    {0, 5, Rational(7, 3), "dumer_d5", "Dumer, c(q,5) <= 7/3 for all q"},
    {3, 5, Rational(2), "hamming_met_q3", "ternary double-error-correcting BCH (Goppa), c(3,5) = 2"},
    {4, 5, Rational(2), "hamming_met_q4", "Gevorkyan; Dumer-Zinoviev, c(4,5) = 2"},
    {0, 6, Rational(3), "dumer_d6", "Dumer, c(q,6) <= 3 for all q"},
    {3, 6, Rational(5, 2), "dumer_q3_d6", "Dumer, c(3,6) <= 2.5"},
    {4, 6, Rational(17, 6), "feng_q4_d6", "Feng et al., c(4,6) <= 17/6"},
};

}  // namespace

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

std::string format4(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << v;
    return out.str();
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string BoundValue::text() const {
    if (exact) return format_rational(*exact) + " (" + format4(value) + ")";
    return format4(value);
}

std::int64_t hamming_lower(std::int64_t q, std::int64_t d) {
    require(q, d);
    return (d - 1) / 2;
}

std::int64_t varshamov_upper(std::int64_t d) {
    require(2, d);
    return d - 2;
}

std::int64_t gilbert_upper(std::int64_t d) {
    require(2, d);
    return d - 1;
}

std::int64_t bch_upper(std::int64_t q, std::int64_t d) {
    require(q, d);
    const std::int64_t num = (d - 2) * (q - 1);
    return (num + q - 1) / q;
}

Rational new_upper(std::int64_t d) {
    require(2, d);
    return Rational(d - 3) + Rational(1, d - 2);
}

double cap_bound_d4(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
    const long double qq = static_cast<long double>(q);
    return static_cast<double>(6.0L * std::log(qq) / std::log(qq * qq * qq * qq + qq * qq - 1.0L));
}

std::vector<BoundValue> special_bounds(std::int64_t q, std::int64_t d) {
    std::vector<BoundValue> out;
    if (q < 2 || d < 3) return out;
    if (d == 4)
        out.push_back(BoundValue{cap_bound_d4(q), std::nullopt, "edel_bierbrauer_d4",
                                 "Edel-Bierbrauer caps, 6/log_q(q^4+q^2-1)"});
    for (const auto& rec : kRecords)
        if (rec.d == d && (rec.q == 0 || rec.q == q)) out.push_back(rational_bound(rec.value, rec.label, rec.source));
    return out;
}

BoundReport best_known(std::int64_t q, std::int64_t d, bool include_new) {
    require(q, d);
    BoundReport rep;
    rep.q = q;
    rep.d = d;
    rep.hamming_lower = hamming_lower(q, d);
    rep.varshamov_upper = varshamov_upper(d);
    rep.gilbert_upper = gilbert_upper(d);
    rep.bch_upper = bch_upper(q, d);
    rep.new_upper = new_upper(d);
    rep.includes_new = include_new;
    rep.special = special_bounds(q, d);

    std::vector<BoundValue> uppers{
        rational_bound(Rational(rep.varshamov_upper), "varshamov", "Varshamov existence bound, d-2"),
        rational_bound(Rational(rep.gilbert_upper), "gilbert", "Gilbert bound, d-1"),
        rational_bound(Rational(rep.bch_upper), "bch", "extended BCH codes, ceil((d-2)(q-1)/q)"),
    };
    if (include_new) uppers.push_back(rational_bound(rep.new_upper, "norm_bch", "norm-augmented BCH, (d-3)+1/(d-2)"));
    uppers.insert(uppers.end(), rep.special.begin(), rep.special.end());

    rep.best = uppers.front();
    for (const auto& b : uppers)
        if (b.value < rep.best.value - kTie) rep.best = b;
    for (const auto& b : uppers)
        if (std::abs(b.value - rep.best.value) <= kTie) rep.best_labels.push_back(b.label);

    const double lower = static_cast<double>(rep.hamming_lower);
    rep.consistent = lower <= rep.best.value + kTie;
    rep.exact = std::abs(lower - rep.best.value) <= kTie;
    return rep;
}

std::string BoundReport::to_text() const {
    std::ostringstream out;
    out << "q=" << q << "\nd=" << d << "\n"
        << "hamming_lower=" << hamming_lower << "\n"
        << "varshamov_upper=" << varshamov_upper << "\n"
        << "gilbert_upper=" << gilbert_upper << "\n"
        << "bch_upper=" << bch_upper << "\n"
        << "new_upper=" << format_rational(new_upper) << " (" << format4(to_double(new_upper)) << ")"
        << (includes_new ? "" : " [excluded]") << "\n";
    for (const auto& s : special) out << "special." << s.label << "=" << s.text() << "  # " << s.source << "\n";
    out << "best_upper=" << best.text() << "\n";
    out << "best_sources=";
    for (std::size_t i = 0; i < best_labels.size(); ++i) out << (i ? "," : "") << best_labels[i];
    out << "\nexact=" << (exact ? "yes" : "no") << "\n";
    if (!consistent) out << "inconsistent=lower bound exceeds best upper bound\n";
    return out.str();
}

namespace {

nlohmann::json bound_json(const BoundValue& b) {
    nlohmann::json j;
    j["value"] = b.value;
    if (b.exact) j["exact"] = format_rational(*b.exact);
    j["label"] = b.label;
    j["source"] = b.source;
    return j;
}

nlohmann::json report_json(const BoundReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["d"] = r.d;
    j["hamming_lower"] = r.hamming_lower;
    j["varshamov_upper"] = r.varshamov_upper;
    j["gilbert_upper"] = r.gilbert_upper;
    j["bch_upper"] = r.bch_upper;
    j["new_upper"] = format_rational(r.new_upper);
    j["includes_new"] = r.includes_new;
    j["special"] = nlohmann::json::array();
    for (const auto& s : r.special) j["special"].push_back(bound_json(s));
    j["best"] = bound_json(r.best);
    j["best_sources"] = r.best_labels;
    j["exact"] = r.exact;
    j["consistent"] = r.consistent;
    return j;
}

}  // namespace

std::string BoundReport::to_json() const { return report_json(*this).dump(2); }

std::string bounds_table(std::int64_t qmin, std::int64_t qmax, std::int64_t dmin, std::int64_t dmax, bool include_new) {
    require(qmin, dmin);
    if (qmax < qmin || dmax < dmin) throw std::invalid_argument("empty table range");
    std::ostringstream out;
    out << std::left << std::setw(6) << "q\\d";
    for (std::int64_t d = dmin; d <= dmax; ++d) out << std::setw(30) << ("d=" + std::to_string(d));
    out << "\n";
    for (std::int64_t q = qmin; q <= qmax; ++q) {
        out << std::setw(6) << q;
        for (std::int64_t d = dmin; d <= dmax; ++d) {
            const auto rep = best_known(q, d, include_new);
            std::string cell = format4(rep.best.value) + (rep.exact ? "= " : "  ") + rep.best_labels.front();
            out << std::setw(30) << cell;
        }
        out << "\n";
    }
    out << "('=' marks cells where the Hamming lower bound is met; first winning bound shown)\n";
    return out.str();
}

std::string bounds_table_json(std::int64_t qmin, std::int64_t qmax, std::int64_t dmin, std::int64_t dmax,
                              bool include_new) {
    require(qmin, dmin);
    nlohmann::json rows = nlohmann::json::array();
    for (std::int64_t q = qmin; q <= qmax; ++q)
        for (std::int64_t d = dmin; d <= dmax; ++d) rows.push_back(report_json(best_known(q, d, include_new)));
    return rows.dump(2);
}

// ---------------------------------------------------------------------------

std::string EmpiricalPoint::to_text() const {
    std::ostringstream out;
    out << "q=" << q << "\nn=" << n << "\nr=" << r << "\nratio=" << format4(ratio);
    if (exact) out << " (" << format_rational(*exact) << ")";
    out << "\n";
    return out.str();
}

EmpiricalPoint empirical_rho(const ParityCheckMatrix& h) {
    EmpiricalPoint pt;
    pt.q = h.q();
    pt.n = h.cols();
    gf::Matrix a(h.rows(), gf::Row(h.cols()));
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) a[i][j] = h.at(i, j);
    pt.r = gf::rank(std::move(a), h.q());
    if (pt.n < 2) throw std::invalid_argument("redundancy ratio needs n >= 2");
    pt.ratio = static_cast<double>(pt.r) * std::log(static_cast<double>(pt.q)) / std::log(static_cast<double>(pt.n));
    std::uint64_t pw = 1;
    std::int64_t m = 0;
    while (pw < pt.n) {
        pw *= pt.q;
        ++m;
    }
    if (pw == pt.n) pt.exact = Rational(static_cast<std::int64_t>(pt.r), m);
    return pt;
}

}  // namespace nbch
