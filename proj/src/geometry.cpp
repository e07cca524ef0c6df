#include "crossing_forge/geometry.hpp"

namespace cf {

std::string rational_to_string(const Rational& r) {
    Rational c = r; // cpp_rational keeps canonical form
    std::string s = boost::multiprecision::numerator(c).str();
    if (boost::multiprecision::denominator(c) != 1)
        s += "/" + boost::multiprecision::denominator(c).str();
    return s;
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error("rational: zero denominator in '" + s + "'");
    return Rational(num, den);
}

std::string Point::to_string() const {
    return rational_to_string(x) + " " + rational_to_string(y);
}

int orientation(const Point& a, const Point& b, const Point& c) {
    Rational d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

SegmentIntersection intersect_segments(const Point& a1, const Point& a2, const Point& b1,
                                       const Point& b2) {
    SegmentIntersection res;
    int d1 = orientation(b1, b2, a1);
    int d2 = orientation(b1, b2, a2);
    int d3 = orientation(a1, a2, b1);
    int d4 = orientation(a1, a2, b2);

    if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
        // collinear: overlap, touch, or nothing
        auto lo = [&](const Point& p, const Point& q) { return p < q ? p : q; };
        auto hi = [&](const Point& p, const Point& q) { return p < q ? q : p; };
        Point amin = lo(a1, a2), amax = hi(a1, a2);
        Point bmin = lo(b1, b2), bmax = hi(b1, b2);
        Point start = amin < bmin ? bmin : amin;
        Point end = amax < bmax ? amax : bmax;
        if (end < start) return res;
        if (start == end) {
            res.kind = SegmentIntersection::Kind::Touch;
            res.point = start;
            return res;
        }
        res.kind = SegmentIntersection::Kind::CollinearOverlap;
        return res;
    }

    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        // proper crossing; solve a1 + t (a2 - a1) on line b
        Rational rx = a2.x - a1.x, ry = a2.y - a1.y;
        Rational sx = b2.x - b1.x, sy = b2.y - b1.y;
        Rational denom = rx * sy - ry * sx;
        Rational t = ((b1.x - a1.x) * sy - (b1.y - a1.y) * sx) / denom;
        res.kind = SegmentIntersection::Kind::Proper;
        res.point = Point{a1.x + t * rx, a1.y + t * ry};
        return res;
    }

    // endpoint touches
    for (const Point* p : {&a1, &a2})
        if (point_on_segment(*p, b1, b2)) {
            res.kind = SegmentIntersection::Kind::Touch;
            res.point = *p;
            return res;
        }
    for (const Point* p : {&b1, &b2})
        if (point_on_segment(*p, a1, a2)) {
            res.kind = SegmentIntersection::Kind::Touch;
            res.point = *p;
            return res;
        }
    return res;
}

} // namespace cf
