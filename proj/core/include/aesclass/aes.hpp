#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "aesclass/gf256.hpp"

namespace aesclass {

/// A 16-byte block in FIPS-197 byte order (byte 0 first).
using Block = std::array<std::uint8_t, 16>;

/// One 4-byte key-schedule word / state column, top row first.
using Word = std::array<GFByte, 4>;

inline constexpr int kRounds = 10;

/**
 * The AES working state. Row and column indices are 0-based: paper-style
 * entry A_{rc} (1-based) lives at (r-1, c-1). A block loads column-major,
 * so block byte i goes to row i % 4, column i / 4.
 */
class State {
public:
    constexpr State() = default;

    static constexpr State from_block(const Block& block) {
        State s;
        for (std::size_t i = 0; i < 16; ++i) {
            s.cells_[i] = GFByte(block[i]);
        }
        return s;
    }

    constexpr Block to_block() const {
        Block out{};
        for (std::size_t i = 0; i < 16; ++i) {
            out[i] = cells_[i].value;
        }
        return out;
    }

    constexpr GFByte& operator()(std::size_t row, std::size_t col) {
        return cells_[col * 4 + row];
    }
    constexpr GFByte operator()(std::size_t row, std::size_t col) const {
        return cells_[col * 4 + row];
    }

    constexpr Word column(std::size_t col) const {
        return {cells_[col * 4], cells_[col * 4 + 1], cells_[col * 4 + 2], cells_[col * 4 + 3]};
    }
    constexpr void set_column(std::size_t col, const Word& w) {
        for (std::size_t r = 0; r < 4; ++r) {
            cells_[col * 4 + r] = w[r];
        }
    }

    friend constexpr bool operator==(const State&, const State&) = default;

private:
    std::array<GFByte, 16> cells_{};
};

/// Eleven round keys, index 0 is the cipher key itself.
struct RoundKeySchedule {
    std::array<State, kRounds + 1> keys{};
};

// ------------------------------------------------------------------------
// S-box
// ------------------------------------------------------------------------

/// Forward and inverse S-box, generated from the field inverse and the
/// affine map on first use.
class SBox {
public:
    static const SBox& instance();

    std::uint8_t forward(std::uint8_t x) const { return forward_[x]; }
    std::uint8_t inverse(std::uint8_t x) const { return inverse_[x]; }

    const std::array<std::uint8_t, 256>& forward_table() const { return forward_; }
    const std::array<std::uint8_t, 256>& inverse_table() const { return inverse_; }

private:
    SBox();
    std::array<std::uint8_t, 256> forward_{};
    std::array<std::uint8_t, 256> inverse_{};
};

// ------------------------------------------------------------------------
// Round operations
// ------------------------------------------------------------------------

State sub_bytes(const State& s);
State inv_sub_bytes(const State& s);
State shift_rows(const State& s);
State inv_shift_rows(const State& s);
State mix_columns(const State& s);
State inv_mix_columns(const State& s);
State add_round_key(const State& s, const State& key);

/// Column-level MixColumns, exposed for the column XOR properties.
Word mix_column(const Word& column);
Word inv_mix_column(const Word& column);

/// Circulant matrices with first rows (2,3,1,1) and (14,11,13,9).
ClassMatrix mix_columns_matrix();
ClassMatrix inv_mix_columns_matrix();

// ------------------------------------------------------------------------
// Key schedule
// ------------------------------------------------------------------------

/// Rcon for the transition into round `round` (1..10).
std::uint8_t rcon(int round);

Word rot_word(const Word& w);
Word sub_word(const Word& w);

/// G = SubWord(RotWord(w)) with Rcon(round) XORed into the first byte.
/// `round` is the index of the key being produced (1..10).
Word key_schedule_g(const Word& w, int round);

RoundKeySchedule expand_key(const Block& key);

// ------------------------------------------------------------------------
// Block cipher
// ------------------------------------------------------------------------

Block encrypt_block(const Block& plaintext, const Block& key);
Block decrypt_block(const Block& ciphertext, const Block& key);

// ------------------------------------------------------------------------
// Hex I/O
// ------------------------------------------------------------------------

/// Parses exactly 32 hex digits (either case). Throws std::invalid_argument.
Block parse_block_hex(std::string_view hex);

/// 32 lowercase hex digits, byte 0 first.
std::string to_hex(const Block& block);
std::string to_hex(GFByte b);

}  // namespace aesclass
