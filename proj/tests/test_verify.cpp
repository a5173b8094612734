#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "normbch/construct.hpp"
#include "normbch/verify.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using nbch::Elem;

namespace {

nbch::ParityCheckMatrix to_matrix(const oracle::SystematicCode& c) {
    nbch::ParityCheckMatrix h(static_cast<std::uint32_t>(c.q), c.n, {{nbch::BlockKind::power, 1, c.h.size()}});
    for (std::size_t r = 0; r < c.h.size(); ++r)
        for (std::size_t j = 0; j < c.n; ++j) h.set(r, j, static_cast<std::uint32_t>(c.h[r][j]));
    return h;
}

}  // namespace

TEST_CASE("binomial") {
    CHECK(nbch::binomial(25, 3) == 2300);
    CHECK(nbch::binomial(125, 4) == 9691375);
    CHECK(nbch::binomial(5, 7) == 0);
    CHECK(nbch::binomial(10, 0) == 1);
    CHECK(nbch::binomial(100000, 50000) == UINT64_MAX);
}

TEST_CASE("distance certificate for the (5,2,4) augmented code") {
    const auto h = nbch::augmented_matrix(nbch::validate_params(5, 2, 4));
    const auto cert = nbch::min_distance_at_least(h, 4);
    CHECK(cert.certified);
    CHECK(cert.subsets_total == 2300);
    CHECK(cert.subsets_examined == 2300);
    CHECK_FALSE(cert.counterexample.has_value());
    CHECK(cert.matrix_hash == h.hash());
    // Soundness cross-check: no words of weight below 4.
    for (unsigned w = 1; w < 4; ++w) CHECK(nbch::enumerate_weight_words(h, w).empty());
}

TEST_CASE("the un-augmented BCH code fails distance 5") {
    const auto params = nbch::validate_params(5, 3, 5);
    const auto h = nbch::bch_matrix(params);
    const auto cert = nbch::min_distance_at_least(h, 5);
    REQUIRE_FALSE(cert.certified);
    REQUIRE(cert.counterexample.has_value());
    const auto& c = *cert.counterexample;
    CHECK(c.weight() == 4);
    CHECK(props::oracle_in_code(h, props::to_dense(c)));
    CHECK(cert.subsets_examined <= cert.subsets_total);
    CHECK(cert.subsets_examined >= 1);
}

TEST_CASE("distance 2 with nonzero columns") {
    const auto h = nbch::bch_matrix(nbch::validate_params(5, 2, 4));
    const auto cert = nbch::min_distance_at_least(h, 2);
    CHECK(cert.certified);
    CHECK(cert.subsets_total == 25);
    CHECK_THROWS_AS(nbch::min_distance_at_least(h, 1), std::invalid_argument);
}

TEST_CASE("budget") {
    const auto h = nbch::augmented_matrix(nbch::validate_params(5, 3, 5));
    try {
        nbch::min_distance_at_least(h, 5, 1000);
        FAIL("expected BudgetExceeded");
    } catch (const nbch::BudgetExceeded& e) {
        CHECK(e.required() == 9691375);
        CHECK(e.budget() == 1000);
        CHECK(std::string(e.what()).find("9691375") != std::string::npos);
    }
    CHECK_THROWS_AS(nbch::enumerate_weight_words(h, 4, 1000), nbch::BudgetExceeded);
    // C(343, 4) is past the default budget.
    const auto big = nbch::bch_matrix(nbch::validate_params(7, 3, 5));
    CHECK(nbch::binomial(343, 4) > nbch::kDefaultSubsetBudget);
    CHECK_THROWS_AS(nbch::min_distance_at_least(big, 5), nbch::BudgetExceeded);
}

TEST_CASE("verdicts do not depend on the thread count") {
    const auto bch = nbch::bch_matrix(nbch::validate_params(5, 3, 5));
    const auto aug = nbch::augmented_matrix(nbch::validate_params(5, 2, 4));
    const auto ref_b = nbch::min_distance_at_least(bch, 5, nbch::kDefaultSubsetBudget, 1).to_text(false);
    const auto ref_a = nbch::min_distance_at_least(aug, 4, nbch::kDefaultSubsetBudget, 1).to_text(false);
    const auto words = nbch::enumerate_weight_words(aug, 4, nbch::kDefaultSubsetBudget, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        CHECK(nbch::min_distance_at_least(bch, 5, nbch::kDefaultSubsetBudget, t).to_text(false) == ref_b);
        CHECK(nbch::min_distance_at_least(aug, 4, nbch::kDefaultSubsetBudget, t).to_text(false) == ref_a);
        CHECK(nbch::enumerate_weight_words(aug, 4, nbch::kDefaultSubsetBudget, t) == words);
    }
}

TEST_CASE("certificate records") {
    const auto h = nbch::bch_matrix(nbch::validate_params(5, 2, 4));
    const auto cert = nbch::min_distance_at_least(h, 4);
    const auto text = cert.to_text();
    CHECK(text.find("verdict=counterexample") != std::string::npos);
    CHECK(text.find("counterexample_weight=3") != std::string::npos);
    CHECK(text.find("threads=") != std::string::npos);
    CHECK(cert.to_text(false).find("threads=") == std::string::npos);
    const auto j = nlohmann::json::parse(cert.to_json());
    CHECK(j["verdict"] == "counterexample");
    CHECK(j["subsets_total"] == 2300);
    CHECK(j["counterexample"]["support"].size() == 3);
}

TEST_CASE("enumerate_weight_words") {
    const auto h = nbch::bch_matrix(nbch::validate_params(5, 3, 5));
    const auto words = nbch::enumerate_weight_words(h, 4);
    REQUIRE_FALSE(words.empty());
    for (const auto& w : words) {
        REQUIRE(w.weight() == 4);
        REQUIRE(w.coefficients[0] == 1);
        REQUIRE(props::oracle_in_code(h, props::to_dense(w)));
    }
    CHECK(std::is_sorted(words.begin(), words.end()));
    CHECK(nbch::enumerate_weight_words(h, 1).empty());
    CHECK(nbch::enumerate_weight_words(h, 0).empty());
    CHECK(nbch::enumerate_weight_words(h, 126).empty());
}

TEST_CASE("weight enumeration with kernels of dimension above one") {
    // A single all-ones row over GF(5): each 3-subset carries the 3 words (1, a, -1-a), a != 0, 4.
    nbch::ParityCheckMatrix h(5, 5, {{nbch::BlockKind::ones, 0, 1}});
    for (std::size_t j = 0; j < 5; ++j) h.set(0, j, 1);
    CHECK(nbch::enumerate_weight_words(h, 3).size() == 30);
    CHECK(nbch::enumerate_weight_words(h, 2).size() == 10);
    // Weight 5: (1, a, b, c, -1-a-b-c) all nonzero, counted by brute force.
    std::size_t count = 0;
    for (int a = 1; a < 5; ++a)
        for (int b = 1; b < 5; ++b)
            for (int c = 1; c < 5; ++c) count += oracle::mod(-1 - a - b - c, 5) != 0;
    CHECK(nbch::enumerate_weight_words(h, 5).size() == count);
}

TEST_CASE("weight counts agree with full enumeration on random codes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        const std::int64_t q = trial % 2 ? 5 : 3;
        const std::size_t n = 6 + rng() % 7;
        const std::size_t k = 2 + rng() % (n - 3);
        const auto code = oracle::random_systematic(q, n, k, rng);
        const auto truth = oracle::enumerate_all(code);
        const auto h = to_matrix(code);
        for (unsigned w = 1; w <= n; ++w) {
            CAPTURE(w);
            REQUIRE(nbch::enumerate_weight_words(h, w).size() * static_cast<std::size_t>(q - 1) == truth.weight_count[w]);
        }
    }
}

TEST_CASE("subset-rank verdicts agree with full enumeration") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const std::int64_t q = trial % 2 ? 5 : 3;
        const std::size_t n = 8 + rng() % 10;
        const std::size_t k = 2 + rng() % 5;
        const auto code = oracle::random_systematic(q, n, k, rng);
        const auto truth = oracle::enumerate_all(code);
        const auto h = to_matrix(code);
        for (unsigned d = 2; d <= truth.min_distance + 1; ++d) {
            const auto cert = nbch::min_distance_at_least(h, d);
            REQUIRE(cert.certified == (d <= truth.min_distance));
            if (!cert.certified) {
                REQUIRE(cert.counterexample->weight() == truth.min_distance);
                REQUIRE(props::oracle_in_code(h, props::to_dense(*cert.counterexample)));
            }
        }
    }
}

TEST_CASE("on_affine_line") {
    auto f = nbch::Field::make(5, 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Elem a = props::random_elem(*f, rng), b = props::random_elem(*f, rng, true);
        std::vector<Elem> x{f->add(a, f->scale(2, b)), f->add(a, b), a};
        const auto line = nbch::on_affine_line(*f, x);
        REQUIRE(line.has_value());
        CHECK(line->lambdas == std::vector<std::uint32_t>{2, 1, 0});
        CHECK(line->reproduces(*f, x));
        CHECK(line->b != f->zero());
    }
    const std::vector<Elem> off{f->zero(), f->one(), f->primitive()};
    CHECK_FALSE(f->in_prime_field(f->primitive()));
    CHECK_FALSE(nbch::on_affine_line(*f, off).has_value());
    const std::vector<Elem> two{f->zero(), f->one()};
    CHECK_THROWS_AS(nbch::on_affine_line(*f, two), std::invalid_argument);
    const std::vector<Elem> rep{f->zero(), f->one(), f->one()};
    CHECK_THROWS_AS(nbch::on_affine_line(*f, rep), std::invalid_argument);
}

TEST_CASE("lines theorem on (5,2,4)") {
    const auto rep = nbch::verify_lines_theorem(nbch::validate_params(5, 2, 4));
    CHECK(rep.hypotheses_hold);
    CHECK(rep.words >= 1);
    CHECK(rep.on_lines == rep.words);
    CHECK(rep.violations.empty());
    CHECK(rep.subsets == 2300);
    // Weight-3 words of C: every 3 points on a line, times the scalar classes with all-nonzero kernel.
    const auto h = nbch::bch_matrix(nbch::validate_params(5, 2, 4));
    CHECK(rep.words == nbch::enumerate_weight_words(h, 3).size());
    CHECK(nlohmann::json::parse(rep.to_json())["violations"].empty());
}

TEST_CASE("lines theorem rejects parameters outside its hypotheses") {
    CHECK_THROWS_AS(nbch::verify_lines_theorem(nbch::validate_params(5, 4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(nbch::verify_lines_theorem(nbch::validate_params(4, 2, 4), nbch::kDefaultSubsetBudget, 1, true),
                    std::invalid_argument);
    const auto rep = nbch::verify_lines_theorem(nbch::validate_params(3, 2, 5), nbch::kDefaultSubsetBudget, 1, true);
    CHECK_FALSE(rep.hypotheses_hold);
    CHECK(rep.on_lines + rep.violations.size() == rep.words);
    for (const auto& v : rep.violations) {
        CHECK(v.word.weight() == 4);
        CHECK_FALSE(nbch::on_affine_line(*nbch::Field::make(3, 2), v.locators).has_value());
    }
}

TEST_CASE("weight witness (5,2,4)") {
    const auto params = nbch::validate_params(5, 2, 4);
    const auto wit = nbch::construct_weight_word(params);
    CHECK(wit.lambdas == std::vector<std::uint32_t>{2});
    const auto loc = nbch::build_locators(params);
    const auto& f = *loc->field();
    // Coefficients by locator: 2 -> 1, 1 -> 3, 0 -> 1.
    REQUIRE(wit.word.weight() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const Elem x = loc->locator(wit.word.support[i]);
        const std::uint32_t c = wit.word.coefficients[i];
        if (x == f.scalar(2)) CHECK(c == 1);
        else if (x == f.one()) CHECK(c == 3);
        else if (x == f.zero()) CHECK(c == 1);
        else FAIL("unexpected locator");
    }
    CHECK(nbch::is_zero(wit.bch_syndrome));
    CHECK_FALSE(nbch::is_zero(wit.augmented_syndrome));
    CHECK(props::oracle_in_code(nbch::bch_matrix(params), props::to_dense(wit.word)));
    CHECK_FALSE(props::oracle_in_code(nbch::augmented_matrix(params), props::to_dense(wit.word)));
}

TEST_CASE("weight witness on larger parameters") {
    for (const auto& t : std::vector<props::Triple>{{5, 3, 5}, {7, 3, 5}, {7, 2, 4}}) {
        const auto params = nbch::validate_params(t.q, t.m, t.d);
        REQUIRE(params.valid());
        const auto wit = nbch::construct_weight_word(params);
        CHECK(wit.word.weight() == t.d - 1);
        CHECK(props::oracle_in_code(nbch::bch_matrix(params), props::to_dense(wit.word)));
        CHECK_FALSE(props::oracle_in_code(nbch::augmented_matrix(params), props::to_dense(wit.word)));
    }
    CHECK_THROWS(nbch::construct_weight_word(nbch::validate_params(5, 2, 3)));
    CHECK_THROWS(nbch::construct_weight_word(nbch::validate_params(3, 3, 5)));
}

TEST_CASE("vandermonde_check") {
    const std::vector<std::uint32_t> l{0, 1, 2}, x{1, 1, 1};
    CHECK_FALSE(nbch::vandermonde_check(l, x, 5));
    const std::vector<std::uint32_t> rep{1, 1, 2};
    CHECK_THROWS(nbch::vandermonde_check(rep, x, 5));
    const std::vector<std::uint32_t> zero{1, 0, 1};
    CHECK_THROWS(nbch::vandermonde_check(l, zero, 5));
    const std::vector<std::uint32_t> short_x{1, 1};
    CHECK_THROWS(nbch::vandermonde_check(l, short_x, 5));

    // Dropping the top power leaves the witness coefficients as a solution.
    const auto params = nbch::validate_params(5, 3, 5);
    const auto wit = nbch::construct_weight_word(params);
    const auto loc = nbch::build_locators(params);
    const auto& f = *loc->field();
    std::vector<std::uint32_t> lambdas;
    for (auto pos : wit.word.support) {
        const Elem e = loc->locator(pos);
        REQUIRE(f.in_prime_field(e));
        lambdas.push_back(f.coords(e)[0]);
    }
    for (unsigned t = 0; t + 1 < lambdas.size(); ++t) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            sum += wit.word.coefficients[i] * oracle::pow_mod(lambdas[i], t, 5);
        CHECK(sum % 5 == 0);
    }
    CHECK_FALSE(nbch::vandermonde_check(lambdas, wit.word.coefficients, 5));
}

TEST_CASE("property: vandermonde_check is false on valid inputs") {
    auto r = props::vandermonde_never_zero();
    CHECK(r.cases >= props::kCases);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
}
