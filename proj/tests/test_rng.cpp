#include <doctest.h>

#include <cmath>

#include "zenolink/rng.hpp"

using namespace zenolink;

TEST_CASE("random streams are reproducible from the seed") {
    RandomStream a(42), b(42), c(43);
    bool all_equal = true;
    bool any_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double ua = a.uniform();
        const double ub = b.uniform();
        const double uc = c.uniform();
        all_equal = all_equal && (ua == ub);
        any_differs = any_differs || (ua != uc);
    }
    CHECK(all_equal);
    CHECK(any_differs);
}

TEST_CASE("substreams with different keys are distinct, same keys identical") {
    RandomStream a = RandomStream::substream(7, 1, 2);
    RandomStream b = RandomStream::substream(7, 1, 2);
    RandomStream c = RandomStream::substream(7, 1, 3);
    CHECK(a.bits() == b.bits());
    CHECK(a.bits() != c.bits());
}

TEST_CASE("normal draws have the requested moments") {
    RandomStream rng(5);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(2.0, 0.5);
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 2.0) < 4.0 * 0.5 / std::sqrt(double(n)));
    CHECK(std::abs(std::sqrt(var) - 0.5) < 0.01);
}
