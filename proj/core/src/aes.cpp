#include "aesclass/aes.hpp"

#include <stdexcept>

namespace aesclass {

namespace {

std::uint8_t field_inverse(std::uint8_t x) {
    if (x == 0) {
        return 0;
    }
    // x^254 = x^-1 in GF(2^8)*.
    GFByte result(1);
    GFByte base(x);
    for (unsigned e = 254; e != 0; e >>= 1) {
        if (e & 1U) {
            result = result * base;
        }
        base = base * base;
    }
    return result.value;
}

constexpr std::uint8_t rotl8(std::uint8_t v, unsigned n) {
    return static_cast<std::uint8_t>((v << n) | (v >> (8 - n)));
}

Word multiply_column(const ClassMatrix& m, const Word& column) {
    const ClassVector out = m * ClassVector{column};
    return out.q;
}

}  // namespace

SBox::SBox() {
    for (unsigned x = 0; x < 256; ++x) {
        const std::uint8_t b = field_inverse(static_cast<std::uint8_t>(x));
        const std::uint8_t s = static_cast<std::uint8_t>(
            b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
        forward_[x] = s;
        inverse_[s] = static_cast<std::uint8_t>(x);
    }
}

const SBox& SBox::instance() {
    static const SBox sbox;
    return sbox;
}

State sub_bytes(const State& s) {
    const SBox& sbox = SBox::instance();
    State out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = GFByte(sbox.forward(s(r, c).value));
        }
    }
    return out;
}

State inv_sub_bytes(const State& s) {
    const SBox& sbox = SBox::instance();
    State out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = GFByte(sbox.inverse(s(r, c).value));
        }
    }
    return out;
}

State shift_rows(const State& s) {
    State out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = s(r, (c + r) % 4);
        }
    }
    return out;
}

State inv_shift_rows(const State& s) {
    State out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, (c + r) % 4) = s(r, c);
        }
    }
    return out;
}

ClassMatrix mix_columns_matrix() {
    return ClassMatrix::from_rows({{{2, 3, 1, 1}, {1, 2, 3, 1}, {1, 1, 2, 3}, {3, 1, 1, 2}}});
}

ClassMatrix inv_mix_columns_matrix() {
    return ClassMatrix::from_rows(
        {{{14, 11, 13, 9}, {9, 14, 11, 13}, {13, 9, 14, 11}, {11, 13, 9, 14}}});
}

Word mix_column(const Word& column) {
    static const ClassMatrix m = mix_columns_matrix();
    return multiply_column(m, column);
}

Word inv_mix_column(const Word& column) {
    static const ClassMatrix m = inv_mix_columns_matrix();
    return multiply_column(m, column);
}

State mix_columns(const State& s) {
    State out;
    for (std::size_t c = 0; c < 4; ++c) {
        out.set_column(c, mix_column(s.column(c)));
    }
    return out;
}

State inv_mix_columns(const State& s) {
    State out;
    for (std::size_t c = 0; c < 4; ++c) {
        out.set_column(c, inv_mix_column(s.column(c)));
    }
    return out;
}

State add_round_key(const State& s, const State& key) {
    State out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = s(r, c) + key(r, c);
        }
    }
    return out;
}

std::uint8_t rcon(int round) {
    if (round < 1 || round > kRounds) {
        throw std::out_of_range("rcon: round must be in 1..10");
    }
    GFByte value(1);
    for (int i = 1; i < round; ++i) {
        value = value * GFByte(2);
    }
    return value.value;
}

Word rot_word(const Word& w) { return {w[1], w[2], w[3], w[0]}; }

Word sub_word(const Word& w) {
    const SBox& sbox = SBox::instance();
    Word out;
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = GFByte(sbox.forward(w[i].value));
    }
    return out;
}

Word key_schedule_g(const Word& w, int round) {
    Word out = sub_word(rot_word(w));
    out[0] += GFByte(rcon(round));
    return out;
}

RoundKeySchedule expand_key(const Block& key) {
    RoundKeySchedule schedule;
    schedule.keys[0] = State::from_block(key);
    for (int i = 0; i < kRounds; ++i) {
        const State& prev = schedule.keys[static_cast<std::size_t>(i)];
        State& next = schedule.keys[static_cast<std::size_t>(i) + 1];
        const Word g = key_schedule_g(prev.column(3), i + 1);
        for (std::size_t r = 0; r < 4; ++r) {
            next(r, 0) = prev(r, 0) + g[r];
        }
        for (std::size_t c = 1; c < 4; ++c) {
            for (std::size_t r = 0; r < 4; ++r) {
                next(r, c) = next(r, c - 1) + prev(r, c);
            }
        }
    }
    return schedule;
}

Block encrypt_block(const Block& plaintext, const Block& key) {
    const RoundKeySchedule schedule = expand_key(key);
    State s = add_round_key(State::from_block(plaintext), schedule.keys[0]);
    for (int round = 1; round <= kRounds; ++round) {
        s = shift_rows(sub_bytes(s));
        if (round != kRounds) {
            s = mix_columns(s);
        }
        s = add_round_key(s, schedule.keys[static_cast<std::size_t>(round)]);
    }
    return s.to_block();
}

Block decrypt_block(const Block& ciphertext, const Block& key) {
    const RoundKeySchedule schedule = expand_key(key);
    State s = State::from_block(ciphertext);
    for (int round = kRounds; round >= 1; --round) {
        s = add_round_key(s, schedule.keys[static_cast<std::size_t>(round)]);
        if (round != kRounds) {
            s = inv_mix_columns(s);
        }
        s = inv_sub_bytes(inv_shift_rows(s));
    }
    return add_round_key(s, schedule.keys[0]).to_block();
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

Block parse_block_hex(std::string_view hex) {
    if (hex.size() != 32) {
        throw std::invalid_argument("expected 32 hex digits, got " +
                                    std::to_string(hex.size()) + " characters");
    }
    Block out{};
    for (std::size_t i = 0; i < 16; ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("invalid hex digit in \"" + std::string(hex) + "\"");
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_hex(const Block& block) {
    std::string out;
    out.reserve(32);
    for (std::uint8_t b : block) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0F]);
    }
    return out;
}

std::string to_hex(GFByte b) {
    return {kHexDigits[b.value >> 4], kHexDigits[b.value & 0x0F]};
}

}  // namespace aesclass
