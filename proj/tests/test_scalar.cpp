#include <doctest.h>

#include <random>

#include "slink/scalar.hpp"

using slink::Scalar;

TEST_CASE("prime field basics") {
    auto two = Scalar::from_int(5, 2);
    CHECK(two.inverse() == Scalar::from_int(5, 3));
    CHECK(Scalar::from_int(2, 1) + Scalar::from_int(2, 1) == Scalar::zero(2));
    CHECK_THROWS_AS(Scalar::zero(7).inverse(), slink::ScalarError);
    CHECK_THROWS_AS(Scalar::one(5) + Scalar::one(7), slink::ScalarError);
}

TEST_CASE("rational basics") {
    auto a = Scalar::from_rational(1, 3);
    auto b = Scalar::from_rational(1, 6);
    CHECK(a + b == Scalar::from_rational(1, 2));
    CHECK((a * b).str() == "1/18");
}

TEST_CASE("field axioms, randomized") {
    std::mt19937 rng(7);
    for (long p : {0L, 2L, 3L, 5L, 7L, 31L}) {
        auto rnd = [&]() {
            long v = static_cast<long>(rng() % 200) - 100;
            if (p == 0 && rng() % 2) {
                long den = 1 + static_cast<long>(rng() % 12);
                return Scalar::from_rational(v, den);
            }
            return Scalar::from_int(p, v);
        };
        for (int it = 0; it < 200; ++it) {
            Scalar a = rnd(), b = rnd(), c = rnd();
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Scalar::zero(p));
            if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(p));
        }
    }
}

TEST_CASE("characteristic validation") {
    CHECK(slink::is_valid_characteristic(0));
    CHECK(slink::is_valid_characteristic(2));
    CHECK(slink::is_valid_characteristic(31));
    CHECK(!slink::is_valid_characteristic(1));
    CHECK(!slink::is_valid_characteristic(6));
    CHECK(!slink::is_valid_characteristic(-3));
}
