#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aesclass {

/**
 * Square grid of 64-bit counters indexed [x][y]. The tag keeps the class
 * count matrix and the 2-fold pair table from being mixed up.
 *
 * For an S-box on n-bit words the dimension is 2^n: 256 for AES, 16 for the
 * 4-bit test tables.
 */
template <typename Tag>
class CountGrid {
public:
    CountGrid() = default;
    explicit CountGrid(std::size_t dim) : dim_(dim), cells_(dim * dim, 0) {}

    std::size_t dim() const { return dim_; }

    std::uint64_t& operator()(std::size_t x, std::size_t y) { return cells_[x * dim_ + y]; }
    std::uint64_t operator()(std::size_t x, std::size_t y) const { return cells_[x * dim_ + y]; }

    std::uint64_t row_sum(std::size_t x) const {
        std::uint64_t sum = 0;
        for (std::size_t y = 0; y < dim_; ++y) {
            sum += (*this)(x, y);
        }
        return sum;
    }

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (std::uint64_t c : cells_) {
            sum += c;
        }
        return sum;
    }

    std::span<const std::uint64_t> cells() const { return cells_; }
    std::span<std::uint64_t> cells() { return cells_; }

    friend bool operator==(const CountGrid&, const CountGrid&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> cells_;
};

struct CountsTag {};
struct PairTag {};

/// [X][Y] = number of 4-tuples with input class X and output class Y.
using CountsMatrix = CountGrid<CountsTag>;

/// [a][b] = number of pairs (x1, x2) with x1^x2 = a and S(x1)^S(x2) = b.
using PairTable = CountGrid<PairTag>;

/// Row-stochastic matrix: counts divided by dim^3 (2^24 for AES). Entries
/// are exact, since every count is below 2^53 and the divisor is a power
/// of two.
struct DistMatrix {
    std::size_t dim = 0;
    std::uint64_t denominator = 0;
    std::vector<double> p;

    double operator()(std::size_t x, std::size_t y) const { return p[x * dim + y]; }
};

/// Throws std::invalid_argument unless `sbox` has 2^n entries (1 <= n <= 8)
/// and is a bijection.
void validate_sbox(std::span<const std::uint8_t> sbox);

std::vector<std::uint8_t> invert_sbox(std::span<const std::uint8_t> sbox);

/**
 * Exhausts all dim^4 input tuples (2^32 for AES), accumulating
 * [X1^X2^X3^X4][S(X1)^S(X2)^S(X3)^S(X4)]. The outermost variable is split
 * across `threads` workers with private accumulators; the merged result does
 * not depend on the thread count.
 */
CountsMatrix compute_counts_naive(std::span<const std::uint8_t> sbox, unsigned threads = 1);

/// Single pass over all (x1, x2) pairs.
PairTable compute_pair_table(std::span<const std::uint8_t> sbox);

/**
 * XOR self-convolution of the pair table over (Z/2)^(2n), computed as
 * WHT -> pointwise square -> WHT -> divide by dim^2. Intermediates are
 * signed 64-bit: |coefficient| <= 2^16 before squaring, so nothing exceeds
 * 2^48. Throws std::runtime_error on a non-integral or negative result.
 */
CountsMatrix xor_convolve_square(const PairTable& table);

struct RowStats {
    std::size_t row = 0;
    std::uint64_t max = 0;
    std::size_t argmax = 0;
    std::uint64_t min = 0;
    std::size_t argmin = 0;
};

/// Ties resolve to the smallest column index.
struct CountsStats {
    std::vector<RowStats> rows;
    std::uint64_t total = 0;
    std::uint64_t expected_cell = 0;
    std::uint64_t row0_max = 0;
    std::uint64_t row0_min = 0;
    // Extremes over rows 1..dim-1.
    std::uint64_t other_rows_max = 0;
    std::uint64_t other_rows_min = 0;
};

CountsStats counts_stats(const CountsMatrix& c);

/// Throws std::invalid_argument if any row does not sum to dim^3.
DistMatrix dist_from_counts(const CountsMatrix& c);

/// True iff p[X][Y] == invp[Y][X] for every cell.
bool transpose_check(const CountsMatrix& p, const CountsMatrix& invp);

bool is_symmetric(const CountsMatrix& c);

// ------------------------------------------------------------------------
// File formats
// ------------------------------------------------------------------------

/// One line per X, dim comma-separated integers per line. With `header`,
/// a first line lists the column indices.
void write_counts_csv(std::ostream& out, const CountsMatrix& c, bool header = false);
CountsMatrix read_counts_csv(std::istream& in, bool header = false);

/// {"dim": n, "rows": [[...], ...]}
std::string counts_to_json(const CountsMatrix& c);

/// {"rows": [{"row","max","argmax","min","argmin"}, ...],
///  "global": {"total", "expected_cell", ...}}
std::string stats_to_json(const CountsStats& stats);

}  // namespace aesclass
