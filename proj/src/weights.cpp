#include "crossing_forge/weights.hpp"

#include <sstream>

namespace cf {

void WeightPoly::set(int deg, BigInt c) {
    if (c < 0) throw Error("WeightPoly: negative coefficient at degree " + std::to_string(deg));
    if (c == 0)
        coeffs_.erase(deg);
    else
        coeffs_[deg] = std::move(c);
}

WeightPoly WeightPoly::constant(const BigInt& c) { return monomial(c, 0); }

WeightPoly WeightPoly::monomial(const BigInt& c, int deg) {
    if (deg < 0) throw Error("WeightPoly: negative degree");
    WeightPoly p;
    p.set(deg, c);
    return p;
}

WeightPoly WeightPoly::from_coeff_array(const std::vector<BigInt>& coeffs) {
    WeightPoly p;
    for (std::size_t d = 0; d < coeffs.size(); ++d) p.set(static_cast<int>(d), coeffs[d]);
    return p;
}

int WeightPoly::degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

BigInt WeightPoly::coeff(int deg) const {
    auto it = coeffs_.find(deg);
    return it == coeffs_.end() ? BigInt(0) : it->second;
}

BigInt WeightPoly::max_coeff() const {
    BigInt m = 0;
    for (const auto& [d, c] : coeffs_)
        if (c > m) m = c;
    return m;
}

WeightPoly& WeightPoly::operator+=(const WeightPoly& rhs) {
    for (const auto& [d, c] : rhs.coeffs_) set(d, coeff(d) + c);
    return *this;
}

WeightPoly operator*(const WeightPoly& a, const WeightPoly& b) {
    WeightPoly p;
    for (const auto& [da, ca] : a.coeffs_)
        for (const auto& [db, cb] : b.coeffs_) p.set(da + db, p.coeff(da + db) + ca * cb);
    return p;
}

WeightPoly WeightPoly::scaled(const BigInt& factor) const {
    if (factor < 0) throw Error("WeightPoly: negative scale factor");
    WeightPoly p;
    for (const auto& [d, c] : coeffs_) p.set(d, c * factor);
    return p;
}

WeightPoly WeightPoly::checked_sub(const WeightPoly& rhs) const {
    WeightPoly p = *this;
    for (const auto& [d, c] : rhs.coeffs_) {
        BigInt nc = p.coeff(d) - c;
        if (nc < 0)
            throw Error("WeightPoly: checked_sub would produce a negative coefficient at degree " +
                        std::to_string(d));
        p.set(d, nc);
    }
    return p;
}

BigInt WeightPoly::eval(const BigInt& omega) const {
    if (omega < 1) throw Error("WeightPoly::eval: omega must be >= 1");
    // Horner over the dense range [0, degree]
    BigInt acc = 0;
    int d = degree();
    for (int k = d; k >= 0; --k) acc = acc * omega + coeff(k);
    return acc;
}

Ordering WeightPoly::lex_compare(const WeightPoly& rhs) const {
    auto a = coeffs_.rbegin(), b = rhs.coeffs_.rbegin();
    while (a != coeffs_.rend() && b != rhs.coeffs_.rend()) {
        if (a->first != b->first) return a->first < b->first ? Ordering::Less : Ordering::Greater;
        if (a->second != b->second) return a->second < b->second ? Ordering::Less : Ordering::Greater;
        ++a;
        ++b;
    }
    if (a != coeffs_.rend()) return Ordering::Greater;
    if (b != rhs.coeffs_.rend()) return Ordering::Less;
    return Ordering::Equal;
}

std::string WeightPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto& [d, c] = *it;
        if (d == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "w";
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

std::vector<BigInt> WeightPoly::coeff_array() const {
    std::vector<BigInt> v(static_cast<std::size_t>(std::max(degree(), 0)) + 1, BigInt(0));
    for (const auto& [d, c] : coeffs_) v[static_cast<std::size_t>(d)] = c;
    return v;
}

WeightPoly add(const WeightPoly& a, const WeightPoly& b) { return a + b; }
WeightPoly mul(const WeightPoly& a, const WeightPoly& b) { return a * b; }

Ordering compare_symbolic(const WeightPoly& a, const WeightPoly& b, const BigInt& omega_bound) {
    if (a.max_coeff() >= omega_bound || b.max_coeff() >= omega_bound)
        throw Error("compare_symbolic: a coefficient reaches the omega bound " + omega_bound.str());
    return a.lex_compare(b);
}

BigInt eval(const WeightPoly& p, const BigInt& omega) { return p.eval(omega); }

std::string color_name(ColorClass c) {
    switch (c) {
        case ColorClass::HB: return "HB";
        case ColorClass::LB: return "LB";
        case ColorClass::R: return "R";
        case ColorClass::RPrime: return "R'";
        case ColorClass::B: return "B";
        case ColorClass::BPrime: return "B'";
        case ColorClass::C: return "C";
        case ColorClass::G: return "G";
    }
    throw Error("color_name: bad color");
}

ColorClass color_from_name(const std::string& name) {
    if (name == "HB") return ColorClass::HB;
    if (name == "LB") return ColorClass::LB;
    if (name == "R") return ColorClass::R;
    if (name == "R'") return ColorClass::RPrime;
    if (name == "B") return ColorClass::B;
    if (name == "B'") return ColorClass::BPrime;
    if (name == "C") return ColorClass::C;
    if (name == "G") return ColorClass::G;
    throw Error("color_from_name: unknown color '" + name + "'");
}

WeightPoly color_class_weight(ColorClass c) {
    switch (c) {
        case ColorClass::HB: return WeightPoly::omega_power(8);
        case ColorClass::LB: return WeightPoly::omega_power(6);
        case ColorClass::RPrime:
        case ColorClass::BPrime: return WeightPoly::omega_power(3);
        case ColorClass::C: return WeightPoly::omega_power(2);
        case ColorClass::G: return WeightPoly::constant(1);
        case ColorClass::R:
        case ColorClass::B:
            throw Error("color_class_weight: R/B verticals carry per-edge adjustment weights");
    }
    throw Error("color_class_weight: bad color");
}

WeightPoly g_weight(long j) {
    if (j < 1) throw Error("g_weight: j must be >= 1");
    WeightPoly p = WeightPoly::omega_power(4);
    p += WeightPoly::monomial(BigInt(j) * (j + 1), 1);
    return p;
}

WeightPoly s_weight(long j) {
    if (j < 1) throw Error("s_weight: j must be >= 1");
    WeightPoly p = WeightPoly::omega_power(4);
    p += WeightPoly::monomial(BigInt(j) * (j + 2), 1);
    return p;
}

} // namespace cf
