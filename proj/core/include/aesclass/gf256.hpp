#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace aesclass {

/// AES reduction polynomial m(x) = x^8 + x^4 + x^3 + x + 1.
inline constexpr std::uint16_t kReductionPolynomial = 0x11B;

/**
 * An element of GF(2^8), stored as the bit pattern of a polynomial over
 * GF(2) with degree < 8. Addition is XOR; multiplication reduces modulo
 * kReductionPolynomial.
 */
struct GFByte {
    std::uint8_t value = 0;

    constexpr GFByte() = default;
    constexpr explicit GFByte(std::uint8_t v) : value(v) {}

    friend constexpr bool operator==(GFByte, GFByte) = default;
    friend constexpr auto operator<=>(GFByte, GFByte) = default;
};

constexpr GFByte gf_add(GFByte a, GFByte b) {
    return GFByte(static_cast<std::uint8_t>(a.value ^ b.value));
}

/// Shift-and-add multiplication, one conditional reduction per bit of b.
constexpr GFByte gf_mul(GFByte a, GFByte b) {
    std::uint16_t x = a.value;
    std::uint8_t y = b.value;
    std::uint8_t product = 0;
    while (y != 0) {
        if (y & 1U) {
            product ^= static_cast<std::uint8_t>(x);
        }
        x <<= 1;
        if (x & 0x100U) {
            x ^= kReductionPolynomial;
        }
        y >>= 1;
    }
    return GFByte(product);
}

constexpr GFByte operator+(GFByte a, GFByte b) { return gf_add(a, b); }
constexpr GFByte operator*(GFByte a, GFByte b) { return gf_mul(a, b); }
constexpr GFByte& operator+=(GFByte& a, GFByte b) { return a = gf_add(a, b); }

/// Full 256x256 product table, built on first use and read-only afterwards.
class ProductTable {
public:
    static const ProductTable& instance();

    GFByte operator()(GFByte a, GFByte b) const {
        return GFByte(table_[(static_cast<std::size_t>(a.value) << 8) | b.value]);
    }

private:
    ProductTable();
    std::array<std::uint8_t, 256 * 256> table_{};
};

// ------------------------------------------------------------------------
// 4-dimensional linear algebra over GF(2^8)
// ------------------------------------------------------------------------

/// Four class values (Q1..Q4), one per logical column. Index 0 is Q1.
struct ClassVector {
    std::array<GFByte, 4> q{};

    constexpr GFByte& operator[](std::size_t i) { return q[i]; }
    constexpr GFByte operator[](std::size_t i) const { return q[i]; }

    friend constexpr bool operator==(const ClassVector&, const ClassVector&) = default;
};

constexpr ClassVector operator+(const ClassVector& a, const ClassVector& b) {
    ClassVector out;
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

/// Row-major 4x4 matrix over GF(2^8); m[row][col].
struct ClassMatrix {
    std::array<std::array<GFByte, 4>, 4> m{};

    constexpr std::array<GFByte, 4>& operator[](std::size_t row) { return m[row]; }
    constexpr const std::array<GFByte, 4>& operator[](std::size_t row) const { return m[row]; }

    static constexpr ClassMatrix identity() {
        ClassMatrix out;
        for (std::size_t i = 0; i < 4; ++i) {
            out[i][i] = GFByte(1);
        }
        return out;
    }

    /// Builds a matrix from plain integer rows, e.g. {{2,3,1,1}, ...}.
    static constexpr ClassMatrix from_rows(
        const std::array<std::array<std::uint8_t, 4>, 4>& rows) {
        ClassMatrix out;
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                out[r][c] = GFByte(rows[r][c]);
            }
        }
        return out;
    }

    friend constexpr bool operator==(const ClassMatrix&, const ClassMatrix&) = default;
};

/// Component i of the result is the XOR over j of m[i][j] * v[j].
constexpr ClassVector gf_matrix_mul(const ClassMatrix& m, const ClassVector& v) {
    ClassVector out;
    for (std::size_t i = 0; i < 4; ++i) {
        GFByte acc;
        for (std::size_t j = 0; j < 4; ++j) {
            acc += m[i][j] * v[j];
        }
        out[i] = acc;
    }
    return out;
}

/// Matrix product a*b, so that gf_matrix_mul(a*b, v) == a*(b*v).
constexpr ClassMatrix gf_matrix_compose(const ClassMatrix& a, const ClassMatrix& b) {
    ClassMatrix out;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            GFByte acc;
            for (std::size_t t = 0; t < 4; ++t) {
                acc += a[i][t] * b[t][j];
            }
            out[i][j] = acc;
        }
    }
    return out;
}

constexpr ClassVector operator*(const ClassMatrix& m, const ClassVector& v) {
    return gf_matrix_mul(m, v);
}

constexpr ClassMatrix operator*(const ClassMatrix& a, const ClassMatrix& b) {
    return gf_matrix_compose(a, b);
}

}  // namespace aesclass
