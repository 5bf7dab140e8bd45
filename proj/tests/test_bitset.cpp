#include <doctest.h>

#include <random>

#include "subdeg/bitset.hpp"

using subdeg::DynBitset;

TEST_CASE("basic bit operations") {
    DynBitset b(100);
    CHECK(b.count() == 0);
    CHECK_FALSE(b.any());
    b.set(0);
    b.set(63);
    b.set(64);
    b.set(99);
    CHECK(b.count() == 4);
    CHECK(b.test(63));
    CHECK(b.test(64));
    CHECK_FALSE(b.test(65));
    b.reset(63);
    CHECK(b.count() == 3);
    CHECK(b.to_indices() == std::vector<int>{0, 64, 99});
}

TEST_CASE("set algebra") {
    DynBitset a(70), b(70);
    a.set(1);
    a.set(65);
    b.set(1);
    b.set(2);
    CHECK(a.intersects(b));
    CHECK((a & b).count() == 1);
    CHECK((a | b).count() == 3);
    CHECK(a.count_and(b) == 1);

    DynBitset sub(70);
    sub.set(1);
    CHECK(sub.subset_of(a));
    CHECK(sub.subset_of(b));
    CHECK_FALSE(a.subset_of(b));

    DynBitset c = a;
    c &= b;
    CHECK(c.count() == 1);
    CHECK(c.test(1));
    c |= b;
    CHECK(c == b);
}

TEST_CASE("integer comparison gives a total order") {
    DynBitset a(130), b(130);
    a.set(0);
    b.set(129);
    CHECK(DynBitset::cmp_as_integer(a, b) < 0);
    CHECK(DynBitset::cmp_as_integer(b, a) > 0);
    CHECK(DynBitset::cmp_as_integer(a, a) == 0);
}

TEST_CASE("for_each visits every set bit in order") {
    DynBitset b(200);
    std::vector<int> want = {3, 64, 127, 128, 199};
    for (int i : want) b.set(i);
    std::vector<int> got;
    b.for_each([&](int i) { got.push_back(i); });
    CHECK(got == want);
}

TEST_CASE("hex round trip") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 150);
        DynBitset b(n);
        for (int i = 0; i < n; ++i)
            if (rng() & 1) b.set(i);
        DynBitset back(n);
        CHECK(DynBitset::from_hex(b.to_hex(), n, back));
        CHECK(back == b);
    }

    DynBitset out(8);
    CHECK_FALSE(DynBitset::from_hex("zz", 8, out));
    CHECK_FALSE(DynBitset::from_hex("", 8, out));
    // a set bit beyond the stated width must be rejected
    CHECK_FALSE(DynBitset::from_hex("100", 8, out));
    CHECK(DynBitset::from_hex("ff", 8, out));
    CHECK(out.count() == 8);
}

TEST_CASE("hash distinguishes close sets") {
    DynBitset a(64), b(64);
    a.set(0);
    b.set(1);
    CHECK(subdeg::BitsetHash{}(a) != subdeg::BitsetHash{}(b));
}
