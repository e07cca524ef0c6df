#include "crossing_forge/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace cf;

namespace {
Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }
Point pt(const std::string& x, const std::string& y) {
    return Point{rational_from_string(x), rational_from_string(y)};
}

// slow independent solver: parametric line equations over rationals
SegmentIntersection slow(const Point& a1, const Point& a2, const Point& b1, const Point& b2) {
    SegmentIntersection out;
    Rational rx = a2.x - a1.x, ry = a2.y - a1.y;
    Rational sx = b2.x - b1.x, sy = b2.y - b1.y;
    Rational denom = rx * sy - ry * sx;
    Rational qpx = b1.x - a1.x, qpy = b1.y - a1.y;
    if (denom != 0) {
        Rational t = (qpx * sy - qpy * sx) / denom;
        Rational u = (qpx * ry - qpy * rx) / denom;
        if (t < 0 || t > 1 || u < 0 || u > 1) return out;
        out.kind = (t > 0 && t < 1 && u > 0 && u < 1) ? SegmentIntersection::Kind::Proper
                                                      : SegmentIntersection::Kind::Touch;
        out.point = Point{a1.x + t * rx, a1.y + t * ry};
        return out;
    }
    if (qpx * ry - qpy * rx != 0) return out;
    bool use_x = rx != 0 || sx != 0;
    auto c = [&](const Point& p) { return use_x ? p.x : p.y; };
    Rational lo = std::max(std::min(c(a1), c(a2)), std::min(c(b1), c(b2)));
    Rational hi = std::min(std::max(c(a1), c(a2)), std::max(c(b1), c(b2)));
    if (lo > hi) return out;
    out.kind = lo == hi ? SegmentIntersection::Kind::Touch
                        : SegmentIntersection::Kind::CollinearOverlap;
    if (lo == hi)
        for (const Point* p : {&a1, &a2, &b1, &b2})
            if (c(*p) == lo) out.point = *p;
    return out;
}
} // namespace

TEST_CASE("rational serialization") {
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK(rational_to_string(Rational(5, 2)) == "5/2");
    CHECK(rational_to_string(Rational(-7, 3)) == "-7/3");
    CHECK(rational_from_string("5/2") == Rational(5, 2));
    CHECK(rational_from_string("-12") == Rational(-12));
    CHECK(rational_from_string("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(rational_from_string("1/0"), Error);
}

TEST_CASE("orientation") {
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, -1)) == -1);
    CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
}

TEST_CASE("proper crossing with exact point") {
    auto res = intersect_segments(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0));
    REQUIRE(res.kind == SegmentIntersection::Kind::Proper);
    CHECK(res.point == pt(1, 1));

    // crossing at a non-integer point stays exact
    res = intersect_segments(pt(0, 0), pt(3, 1), pt(1, 1), pt(2, 0));
    REQUIRE(res.kind == SegmentIntersection::Kind::Proper);
    CHECK(res.point == pt("3/2", "1/2"));
}

TEST_CASE("disjoint and touching segments") {
    CHECK(intersect_segments(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)).kind ==
          SegmentIntersection::Kind::None);
    auto touch = intersect_segments(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 5));
    REQUIRE(touch.kind == SegmentIntersection::Kind::Touch);
    CHECK(touch.point == pt(1, 0));
    // shared endpoint
    auto corner = intersect_segments(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0));
    CHECK(corner.kind == SegmentIntersection::Kind::Touch);
}

TEST_CASE("collinear cases") {
    CHECK(intersect_segments(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)).kind ==
          SegmentIntersection::Kind::CollinearOverlap);
    auto endtouch = intersect_segments(pt(0, 0), pt(1, 0), pt(1, 0), pt(2, 0));
    CHECK(endtouch.kind == SegmentIntersection::Kind::Touch);
    CHECK(intersect_segments(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)).kind ==
          SegmentIntersection::Kind::None);
}

TEST_CASE("predicate agrees with the slow parametric solver") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> c(-5, 5);
    int proper = 0;
    for (int it = 0; it < 5000; ++it) {
        Point a1 = pt(c(rng), c(rng)), a2 = pt(c(rng), c(rng));
        Point b1 = pt(c(rng), c(rng)), b2 = pt(c(rng), c(rng));
        if (a1 == a2 || b1 == b2) continue;
        auto fast = intersect_segments(a1, a2, b1, b2);
        auto want = slow(a1, a2, b1, b2);
        CHECK(fast.kind == want.kind);
        if (fast.kind == SegmentIntersection::Kind::Proper) {
            CHECK(fast.point == want.point);
            ++proper;
        }
    }
    CHECK(proper > 100); // the sample actually exercises the crossing path
}
