#ifndef NORMBCH_BOUNDS_HPP
#define NORMBCH_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "normbch/construct.hpp"

namespace nbch {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
/// Fixed 4-decimal presentation.
std::string format4(double v);
std::string format_rational(const Rational& r);

/// A bound on the redundancy coefficient c(q, d). `exact` is set for rational
/// bounds; `value` is always filled.
struct BoundValue {
    double value = 0;
    std::optional<Rational> exact;
    std::string label;   // short id, e.g. "bch"
    std::string source;  // citation-style provenance

    std::string text() const;
};

std::int64_t hamming_lower(std::int64_t q, std::int64_t d);
std::int64_t varshamov_upper(std::int64_t d);
std::int64_t gilbert_upper(std::int64_t d);
std::int64_t bch_upper(std::int64_t q, std::int64_t d);
/// (d - 3) + 1/(d - 2).
Rational new_upper(std::int64_t d);
/// 6 / log_q(q^4 + q^2 - 1), the general distance-4 cap bound.
double cap_bound_d4(std::int64_t q);

/// Literature bounds for small distances that apply at (q, d).
std::vector<BoundValue> special_bounds(std::int64_t q, std::int64_t d);

struct BoundReport {
    std::int64_t q = 0;
    std::int64_t d = 0;
    std::int64_t hamming_lower = 0;
    std::int64_t varshamov_upper = 0;
    std::int64_t gilbert_upper = 0;
    std::int64_t bch_upper = 0;
    Rational new_upper;
    bool includes_new = true;
    std::vector<BoundValue> special;
    BoundValue best;                       // minimum upper bound
    std::vector<std::string> best_labels;  // every upper bound attaining the minimum
    bool exact = false;                    // lower bound meets the best upper bound
    bool consistent = true;                // lower <= best upper

    std::string to_text() const;
    std::string to_json() const;
};

/// Every bound at (q, d) and the best upper bound with provenance.
/// With include_new == false only bounds predating the norm construction count.
BoundReport best_known(std::int64_t q, std::int64_t d, bool include_new = true);

/// Grid of best-known values over q in [qmin, qmax], d in [dmin, dmax], with the winning bound per cell.
std::string bounds_table(std::int64_t qmin, std::int64_t qmax, std::int64_t dmin, std::int64_t dmax,
                         bool include_new = true);
std::string bounds_table_json(std::int64_t qmin, std::int64_t qmax, std::int64_t dmin, std::int64_t dmax,
                              bool include_new = true);

struct EmpiricalPoint {
    std::uint32_t q = 0;
    std::uint64_t n = 0;
    std::uint64_t r = 0;
    double ratio = 0;             // r / log_q(n)
    std::optional<Rational> exact;  // set when n is a power of q

    std::string to_text() const;
};

EmpiricalPoint empirical_rho(const ParityCheckMatrix& h);

}  // namespace nbch

#endif  // NORMBCH_BOUNDS_HPP
