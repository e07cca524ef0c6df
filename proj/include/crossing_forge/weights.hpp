#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

using BigInt = boost::multiprecision::cpp_int;

/// Error for violated preconditions and malformed inputs. Validation
/// outcomes that are expected results (audit reports, decomposition
/// violations) are values, not exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Ordering { Less, Equal, Greater };

// ---------------------------------------------------------------------
// WeightPoly: polynomial in the base weight w with nonnegative integer
// coefficients. All edge weights and crossing totals live here; crossing
// products reach degree 16.
// ---------------------------------------------------------------------
class WeightPoly {
public:
    WeightPoly() = default;

    static WeightPoly zero() { return WeightPoly{}; }
    static WeightPoly constant(const BigInt& c);
    /// c * w^deg
    static WeightPoly monomial(const BigInt& c, int deg);
    /// w^deg
    static WeightPoly omega_power(int deg) { return monomial(1, deg); }
    /// From [c0, c1, ..., c_max].
    static WeightPoly from_coeff_array(const std::vector<BigInt>& coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the leading term; -1 for the zero polynomial.
    int degree() const;
    BigInt coeff(int deg) const;
    const std::map<int, BigInt>& terms() const { return coeffs_; }
    BigInt max_coeff() const;

    WeightPoly& operator+=(const WeightPoly& rhs);
    friend WeightPoly operator+(WeightPoly a, const WeightPoly& b) { return a += b; }
    friend WeightPoly operator*(const WeightPoly& a, const WeightPoly& b);
    WeightPoly scaled(const BigInt& factor) const;

    /// Difference a - b, defined only when every resulting coefficient is
    /// nonnegative; throws otherwise. Budget slack must use eval().
    WeightPoly checked_sub(const WeightPoly& rhs) const;

    BigInt eval(const BigInt& omega) const;

    bool operator==(const WeightPoly& rhs) const { return coeffs_ == rhs.coeffs_; }
    bool operator!=(const WeightPoly& rhs) const { return !(*this == rhs); }

    /// Lexicographic comparison from the highest degree down. Agrees with
    /// numeric evaluation at every omega strictly larger than all
    /// coefficients of both operands.
    Ordering lex_compare(const WeightPoly& rhs) const;

    /// "c8*w^8 + ... + c0"; "0" for the zero polynomial.
    std::string to_string() const;
    /// [c0, c1, ..., c_max]; [0] for the zero polynomial.
    std::vector<BigInt> coeff_array() const;

private:
    // degree -> coefficient; no zero coefficients stored
    std::map<int, BigInt> coeffs_;
    void set(int deg, BigInt c);
};

WeightPoly add(const WeightPoly& a, const WeightPoly& b);
WeightPoly mul(const WeightPoly& a, const WeightPoly& b);

/// Checked symbolic comparison: valid only when every coefficient of both
/// operands is < omega_bound (throws otherwise, never silently wrong).
Ordering compare_symbolic(const WeightPoly& a, const WeightPoly& b, const BigInt& omega_bound);

BigInt eval(const WeightPoly& p, const BigInt& omega);

// ---------------------------------------------------------------------
// Color classes of Table 1.
// ---------------------------------------------------------------------
enum class ColorClass : std::uint8_t { HB, LB, R, RPrime, B, BPrime, C, G };

std::string color_name(ColorClass c);
ColorClass color_from_name(const std::string& name);

/// Fixed weight of a color class. R and B verticals carry per-edge
/// adjustments (g_weight/s_weight) and have no fixed class weight: throws.
WeightPoly color_class_weight(ColorClass c);

/// g_j = w^4 + j(j+1) w, the j-th vertical R-edge weight. Requires j >= 1.
WeightPoly g_weight(long j);
/// s_j = w^4 + j(j+2) w, the j-th vertical B-edge weight. Requires j >= 1.
WeightPoly s_weight(long j);

} // namespace cf
