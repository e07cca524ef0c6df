#pragma once

#include "crossing_forge/weights.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace cf {

using Rational = boost::multiprecision::cpp_rational;

struct Point {
    Rational x, y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
    std::string to_string() const;
};

std::string rational_to_string(const Rational& r); // "p/q", "/1" omitted
Rational rational_from_string(const std::string& s);

/// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

bool point_on_segment(const Point& p, const Point& a, const Point& b);

struct SegmentIntersection {
    enum class Kind {
        None,
        Proper,           // interiors cross in one point
        Touch,            // single common point involving a segment endpoint
        CollinearOverlap, // infinitely many common points
    };
    Kind kind = Kind::None;
    Point point; // set for Proper and Touch
};

SegmentIntersection intersect_segments(const Point& a1, const Point& a2, const Point& b1,
                                       const Point& b2);

} // namespace cf
