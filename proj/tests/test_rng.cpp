#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "approx.hpp"
#include "kappa/rng.hpp"

TEST_CASE("substream seeds separate tags, sizes, and replicates") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t master : {0ull, 1ull, 42ull}) {
        for (const char* tag : {"a", "b", "calibrate/continuousGaussian"}) {
            for (std::size_t n : {10, 20}) {
                for (std::size_t rep : {0, 1, 2}) {
                    seen.insert(kappa::substream_seed(master, tag, n, rep));
                }
            }
        }
    }
    CHECK(seen.size() == 3 * 3 * 2 * 3);  // no collisions across the grid
    CHECK(kappa::substream_seed(7, "x", 5, 9) == kappa::substream_seed(7, "x", 5, 9));
}

TEST_CASE("uniform stays in the half-open unit interval and fills it") {
    kappa::Rng rng(2718);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("uniform_int covers its range uniformly enough") {
    kappa::Rng rng(999);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 50000; ++i) {
        std::uint64_t v = rng.uniform_int(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) {
        CHECK(c > 9500);
        CHECK(c < 10500);
    }
}

TEST_CASE("normal has first moments close to standard") {
    kappa::Rng rng(31415);
    double sum = 0.0, sum2 = 0.0;
    int n = 100000;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        sum += z;
        sum2 += z * z;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    CHECK_NEAR(mean, 0.0, 0.02);
    CHECK_NEAR(var, 1.0, 0.03);
}

TEST_CASE("streams with equal seeds replay exactly") {
    kappa::Rng a(77), b(77);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    kappa::Rng c(77), d(78);
    bool differ = false;
    for (int i = 0; i < 10 && !differ; ++i) differ = c.next_u64() != d.next_u64();
    CHECK(differ);
}
