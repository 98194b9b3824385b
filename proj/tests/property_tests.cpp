#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/properties.hpp"

namespace {

constexpr int cases = 300;

void require(const props::Outcome& o) {
    INFO(o.first_failure);
    CHECK(o.cases == cases);
    CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("subtyping is a reflexive, transitive, antisymmetric order matching the closure") {
    require(props::subtype_order(cases));
}

TEST_CASE("check_abox finds exactly what the closed-world oracle finds") {
    require(props::check_matches_oracle(cases));
}

TEST_CASE("populating tables and reading them back returns the facts") { require(props::sql_round_trip(cases)); }

TEST_CASE("the three views agree with each other and with the semantic oracle under one op") {
    require(props::backend_agreement(cases));
}

TEST_CASE("the three views agree on every op of a random sequence") {
    require(props::sequence_agreement(cases));
}

TEST_CASE("the random families exercise the interesting cases") {
    int violations = 0;
    int deletions_with_victims = 0;
    int retypings_with_victims = 0;
    for (unsigned seed = 0; seed < cases; ++seed) {
        small::Gen gen(2000u + seed);
        violations += !small::expected_findings(gen.arbitrary()).empty();

        small::Gen g2(4000u + seed);
        const auto sm = g2.consistent();
        if (g2.chance(0.5)) {
            int p = g2.uniform(0, static_cast<int>(sm.props.size()) - 1);
            int c = g2.uniform(0, sm.classes() - 1);
            retypings_with_victims += !small::rejected(small::change_domain(sm, p, c)).empty();
        } else {
            deletions_with_victims += !small::rejected(small::delete_class(sm, g2.uniform(0, sm.classes() - 1))).empty();
        }
    }
    CHECK(violations > cases / 2);
    CHECK(deletions_with_victims > 30);
    CHECK(retypings_with_victims > 30);
}

TEST_CASE("the Turtle writer round-trips random models") {
    for (unsigned seed = 0; seed < cases; ++seed) {
        small::Gen gen(5000u + seed);
        const auto sm = gen.arbitrary();
        const auto once = ontorep::parse_document(small::to_turtle(sm));
        const auto twice = ontorep::parse_document(ontorep::serialize(once));
        INFO(small::to_turtle(sm));
        CHECK(ontorep::canonical_blank_renaming(twice.triples) == ontorep::canonical_blank_renaming(once.triples));
    }
}
