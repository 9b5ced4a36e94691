#include <catch2/catch_amalgamated.hpp>

#include "perioda/enumeration.hpp"
#include "perioda/guessing.hpp"
#include "perioda/urn.hpp"

using namespace perioda;

TEST_CASE("guessing recovers the history-count recurrence", "[guess]") {
    UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
    auto prefix = history_sequence(spec, 29);
    auto rec = guess_p_recurrence(prefix, 2, 2);
    REQUIRE(rec.has_value());
    CHECK(rec->order == 2);
    CHECK(rec->coeffs[2] == std::vector<Rational>{4, 0, 0});
    CHECK(rec->coeffs[1] == std::vector<Rational>{-6, 0, 0});
    CHECK(rec->coeffs[0] == std::vector<Rational>{-12, -21, -9});

    // no order-1 representation exists at these degrees
    CHECK_FALSE(guess_p_recurrence(prefix, 1, 2).has_value());
}

TEST_CASE("guessing the factorial recurrence", "[guess]") {
    std::vector<BigInt> fact;
    BigInt f = 1;
    for (int i = 0; i < 25; ++i) {
        fact.push_back(f);
        f *= i + 1;
    }
    auto rec = guess_p_recurrence(fact, 2, 2);
    REQUIRE(rec.has_value());
    CHECK(rec->order == 1);
    CHECK(rec->coeffs[1] == std::vector<Rational>{1, 0});
    CHECK(rec->coeffs[0] == std::vector<Rational>{-1, -1});
}

TEST_CASE("non-holonomic-looking input yields nothing", "[guess]") {
    std::vector<BigInt> pi{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4,
                           6, 2, 6, 4, 3, 3, 8, 3, 2, 7, 9, 5, 0, 2, 8, 8, 4, 1, 9, 7};
    CHECK_FALSE(guess_p_recurrence(pi, 2, 2).has_value());
}

TEST_CASE("a returned recurrence annihilates terms beyond the window", "[guess]") {
    UrnSpec spec = validate_spec(UrnSpec{3, {0, 1, 2}, 1, 1});
    auto all = history_sequence(spec, 60);
    std::vector<BigInt> window(all.begin(), all.begin() + 45);
    auto rec = guess_p_recurrence(window, 3, 3);
    REQUIRE(rec.has_value());
    CHECK(rec->annihilates(all));
    // leading polynomial not identically zero
    bool lead_nonzero = false;
    for (const auto& c : rec->coeffs[rec->order]) lead_nonzero |= (c != 0);
    CHECK(lead_nonzero);
}

TEST_CASE("prefix length precondition", "[guess]") {
    std::vector<BigInt> shorty{1, 2, 6};
    CHECK_THROWS_AS(guess_p_recurrence(shorty, 2, 2), std::invalid_argument);
}
