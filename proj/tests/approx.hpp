#pragma once

#include <cmath>

#include <doctest.h>

// Absolute-tolerance comparison; doctest's Approx is relative-only, which
// breaks down against exact-zero targets.
#define CHECK_NEAR(a, b, tol)                  \
    do {                                       \
        const double va_ = (a), vb_ = (b);     \
        CAPTURE(va_);                          \
        CAPTURE(vb_);                          \
        CHECK(std::fabs(va_ - vb_) <= (tol));  \
    } while (0)

#define REQUIRE_NEAR(a, b, tol)                 \
    do {                                        \
        const double va_ = (a), vb_ = (b);      \
        CAPTURE(va_);                           \
        CAPTURE(vb_);                           \
        REQUIRE(std::fabs(va_ - vb_) <= (tol)); \
    } while (0)
