#include "aesclass/sbox_distribution.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace aesclass {

namespace {

// 4-tuples with a fixed x1 number dim^3 <= 2^24, so a single worker's
// accumulator can never exceed 32 bits.
using LocalCounts = std::vector<std::uint32_t>;

void exhaust_x1(std::span<const std::uint8_t> sbox, std::size_t x1, LocalCounts& acc) {
    const std::size_t dim = sbox.size();
    const std::size_t shift = static_cast<std::size_t>(std::countr_zero(dim));
    const std::size_t y1 = sbox[x1];
    for (std::size_t x2 = 0; x2 < dim; ++x2) {
        const std::size_t x12 = x1 ^ x2;
        const std::size_t y12 = y1 ^ sbox[x2];
        for (std::size_t x3 = 0; x3 < dim; ++x3) {
            const std::size_t x123 = x12 ^ x3;
            const std::size_t y123 = y12 ^ sbox[x3];
            for (std::size_t x4 = 0; x4 < dim; ++x4) {
                const std::size_t x = x123 ^ x4;
                const std::size_t y = y123 ^ sbox[x4];
                ++acc[(x << shift) | y];
            }
        }
    }
}

void walsh_hadamard(std::vector<std::int64_t>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t a = v[j];
                const std::int64_t b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

}  // namespace

void validate_sbox(std::span<const std::uint8_t> sbox) {
    const std::size_t dim = sbox.size();
    if (dim < 2 || dim > 256 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("sbox size must be 2^n with 1 <= n <= 8, got " +
                                    std::to_string(dim));
    }
    std::vector<bool> seen(dim, false);
    for (std::uint8_t v : sbox) {
        if (v >= dim || seen[v]) {
            throw std::invalid_argument("sbox is not a bijection on [0, " +
                                        std::to_string(dim - 1) + "]");
        }
        seen[v] = true;
    }
}

std::vector<std::uint8_t> invert_sbox(std::span<const std::uint8_t> sbox) {
    validate_sbox(sbox);
    std::vector<std::uint8_t> inv(sbox.size());
    for (std::size_t x = 0; x < sbox.size(); ++x) {
        inv[sbox[x]] = static_cast<std::uint8_t>(x);
    }
    return inv;
}

CountsMatrix compute_counts_naive(std::span<const std::uint8_t> sbox, unsigned threads) {
    validate_sbox(sbox);
    const std::size_t dim = sbox.size();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, dim);

    std::vector<LocalCounts> partial(workers, LocalCounts(dim * dim, 0));
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t x1 = w; x1 < dim; x1 += workers) {
                    exhaust_x1(sbox, x1, partial[w]);
                }
            });
        }
    }

    CountsMatrix out(dim);
    auto cells = out.cells();
    for (const LocalCounts& p : partial) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            cells[i] += p[i];
        }
    }
    return out;
}

PairTable compute_pair_table(std::span<const std::uint8_t> sbox) {
    validate_sbox(sbox);
    const std::size_t dim = sbox.size();
    PairTable table(dim);
    for (std::size_t x1 = 0; x1 < dim; ++x1) {
        for (std::size_t x2 = 0; x2 < dim; ++x2) {
            ++table(x1 ^ x2, static_cast<std::size_t>(sbox[x1] ^ sbox[x2]));
        }
    }
    return table;
}

CountsMatrix xor_convolve_square(const PairTable& table) {
    const std::size_t dim = table.dim();
    const std::size_t n = dim * dim;

    std::vector<std::int64_t> v(n);
    auto src = table.cells();
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<std::int64_t>(src[i]);
    }

    walsh_hadamard(v);
    for (std::int64_t& c : v) {
        c *= c;
    }
    walsh_hadamard(v);

    CountsMatrix out(dim);
    auto dst = out.cells();
    const auto norm = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < 0 || v[i] % norm != 0) {
            throw std::runtime_error("xor_convolve_square: non-integral or negative cell at " +
                                     std::to_string(i));
        }
        dst[i] = static_cast<std::uint64_t>(v[i] / norm);
    }
    return out;
}

CountsStats counts_stats(const CountsMatrix& c) {
    const std::size_t dim = c.dim();
    CountsStats stats;
    stats.total = c.total();
    stats.expected_cell = dim == 0 ? 0 : stats.total / (dim * dim);
    stats.other_rows_min = std::numeric_limits<std::uint64_t>::max();

    stats.rows.reserve(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        RowStats row{x, c(x, 0), 0, c(x, 0), 0};
        for (std::size_t y = 1; y < dim; ++y) {
            const std::uint64_t v = c(x, y);
            if (v > row.max) {
                row.max = v;
                row.argmax = y;
            }
            if (v < row.min) {
                row.min = v;
                row.argmin = y;
            }
        }
        if (x == 0) {
            stats.row0_max = row.max;
            stats.row0_min = row.min;
        } else {
            stats.other_rows_max = std::max(stats.other_rows_max, row.max);
            stats.other_rows_min = std::min(stats.other_rows_min, row.min);
        }
        stats.rows.push_back(row);
    }
    if (dim < 2) {
        stats.other_rows_min = 0;
    }
    return stats;
}

DistMatrix dist_from_counts(const CountsMatrix& c) {
    const std::size_t dim = c.dim();
    const std::uint64_t denom = static_cast<std::uint64_t>(dim) * dim * dim;
    DistMatrix d{dim, denom, std::vector<double>(dim * dim)};
    for (std::size_t x = 0; x < dim; ++x) {
        if (c.row_sum(x) != denom) {
            throw std::invalid_argument("dist_from_counts: row " + std::to_string(x) +
                                        " sums to " + std::to_string(c.row_sum(x)) +
                                        ", expected " + std::to_string(denom));
        }
        for (std::size_t y = 0; y < dim; ++y) {
            d.p[x * dim + y] = static_cast<double>(c(x, y)) / static_cast<double>(denom);
        }
    }
    return d;
}

bool transpose_check(const CountsMatrix& p, const CountsMatrix& invp) {
    if (p.dim() != invp.dim()) {
        return false;
    }
    for (std::size_t x = 0; x < p.dim(); ++x) {
        for (std::size_t y = 0; y < p.dim(); ++y) {
            if (p(x, y) != invp(y, x)) {
                return false;
            }
        }
    }
    return true;
}

bool is_symmetric(const CountsMatrix& c) { return transpose_check(c, c); }

void write_counts_csv(std::ostream& out, const CountsMatrix& c, bool header) {
    const std::size_t dim = c.dim();
    if (header) {
        for (std::size_t y = 0; y < dim; ++y) {
            out << (y ? "," : "") << y;
        }
        out << '\n';
    }
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            out << (y ? "," : "") << c(x, y);
        }
        out << '\n';
    }
}

CountsMatrix read_counts_csv(std::istream& in, bool header) {
    std::string line;
    if (header && !std::getline(in, line)) {
        throw std::runtime_error("read_counts_csv: missing header");
    }
    std::vector<std::vector<std::uint64_t>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::uint64_t> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            row.push_back(std::stoull(field));
        }
        rows.push_back(std::move(row));
    }
    const std::size_t dim = rows.size();
    CountsMatrix c(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        if (rows[x].size() != dim) {
            throw std::runtime_error("read_counts_csv: row " + std::to_string(x) + " has " +
                                     std::to_string(rows[x].size()) + " fields, expected " +
                                     std::to_string(dim));
        }
        for (std::size_t y = 0; y < dim; ++y) {
            c(x, y) = rows[x][y];
        }
    }
    return c;
}

std::string counts_to_json(const CountsMatrix& c) {
    nlohmann::ordered_json doc;
    doc["dim"] = c.dim();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t x = 0; x < c.dim(); ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t y = 0; y < c.dim(); ++y) {
            row.push_back(c(x, y));
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump() + "\n";
}

std::string stats_to_json(const CountsStats& stats) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const RowStats& r : stats.rows) {
        nlohmann::ordered_json row;
        row["row"] = r.row;
        row["max"] = r.max;
        row["argmax"] = r.argmax;
        row["min"] = r.min;
        row["argmin"] = r.argmin;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    nlohmann::ordered_json global;
    global["total"] = stats.total;
    global["expected_cell"] = stats.expected_cell;
    global["row0_max"] = stats.row0_max;
    global["row0_min"] = stats.row0_min;
    global["other_rows_max"] = stats.other_rows_max;
    global["other_rows_min"] = stats.other_rows_min;
    doc["global"] = std::move(global);
    return doc.dump(2) + "\n";
}

}  // namespace aesclass
