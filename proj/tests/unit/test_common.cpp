// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>
#include <vector>

#include "common/digest.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "common/wei.hpp"

using namespace rlab;

TEST_SUITE("common") {
    TEST_CASE("wei arithmetic is checked") {
        CHECK(Wei::ether(10).value() == uint128(10'000'000'000'000'000'000ULL));
        CHECK((Wei::ether(2) - Wei::ether(1)) == Wei::ether(1));
        Wei small = Wei::ether(1);
        CHECK_THROWS_AS(small -= Wei::ether(2), Error);
        Wei huge(~uint128(0));
        CHECK_THROWS_AS(huge += Wei(1), Error);
        CHECK_THROWS_AS((void)huge.times(2), Error);
        CHECK(Wei(7).times(3) == Wei(21));
    }

    TEST_CASE("wei decimal round trip") {
        const uint128 max = ~uint128(0);
        CHECK(to_string(max) == "340282366920938463463374607431768211455");
        CHECK(parse_uint128(to_string(max)) == max);
        CHECK(to_string(int128(-1'000'000'000'000'000'000LL)) == "-1000000000000000000");
        CHECK(parse_int128("-42") == int128(-42));
        CHECK(difference(Wei(3), Wei(10)) == int128(-7));
        CHECK_THROWS_AS(parse_uint128("12a"), Error);
        CHECK_THROWS_AS(parse_uint128(""), Error);
        CHECK_THROWS_AS(parse_uint128("340282366920938463463374607431768211456"), Error);
    }

    TEST_CASE("rng streams are reproducible and labelled children independent") {
        Rng a(42), b(42), c(43);
        std::vector<std::uint64_t> xa, xb, xc;
        for (int i = 0; i < 16; ++i) {
            xa.push_back(a.next());
            xb.push_back(b.next());
            xc.push_back(c.next());
        }
        CHECK(xa == xb);
        CHECK(xa != xc);

        // children do not depend on how far the parent advanced
        Rng fresh(42);
        CHECK(a.child("x").next() == fresh.child("x").next());
        CHECK(fresh.child("x").next() != fresh.child("y").next());
        CHECK(fresh.child(0).next() != fresh.child(1).next());
    }

    TEST_CASE("bounded draws stay in range and cover it") {
        Rng r(7);
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 5000; ++i) {
            const auto v = r.uniform(10);
            REQUIRE(v < 10);
            seen.insert(v);
            const auto w = r.uniform_between(2, 8);
            REQUIRE(w >= 2);
            REQUIRE(w <= 8);
            const double u = r.uniform01();
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
        }
        CHECK(seen.size() == 10);
    }

    TEST_CASE("sha256 matches the published test vector") {
        CHECK(to_hex(sha256("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        CHECK(to_hex(DigestInput().add("a").add(std::uint64_t{1}).finish()) !=
              to_hex(DigestInput().add(std::uint64_t{1}).add("a").finish()));
    }
}
