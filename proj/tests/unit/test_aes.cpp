#include <random>
#include <set>

#include <gtest/gtest.h>

#include "aesclass/aes.hpp"

using namespace aesclass;

namespace {

std::uint8_t ref_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    for (int i = 0; i < 8; ++i) {
        if (b & 1) p ^= a;
        const bool carry = a & 0x80;
        a = static_cast<std::uint8_t>(a << 1);
        if (carry) a ^= 0x1B;
        b >>= 1;
    }
    return p;
}

// S-box from its definition: brute-force inverse, then the affine map
// b'_i = b_i ^ b_{i+4} ^ b_{i+5} ^ b_{i+6} ^ b_{i+7} ^ c_i with c = 0x63.
std::array<std::uint8_t, 256> reference_sbox() {
    std::array<std::uint8_t, 256> s{};
    for (unsigned x = 0; x < 256; ++x) {
        std::uint8_t inv = 0;
        for (unsigned y = 1; y < 256 && x != 0; ++y) {
            if (ref_mul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) == 1) {
                inv = static_cast<std::uint8_t>(y);
                break;
            }
        }
        std::uint8_t out = 0;
        for (int i = 0; i < 8; ++i) {
            const int bit = ((inv >> i) ^ (inv >> ((i + 4) % 8)) ^ (inv >> ((i + 5) % 8)) ^
                             (inv >> ((i + 6) % 8)) ^ (inv >> ((i + 7) % 8)) ^ (0x63 >> i)) &
                            1;
            out = static_cast<std::uint8_t>(out | (bit << i));
        }
        s[x] = out;
    }
    return s;
}

State filled(std::uint8_t v) {
    Block b{};
    b.fill(v);
    return State::from_block(b);
}

Word column_of(std::uint32_t packed) {
    return {GFByte(static_cast<std::uint8_t>(packed >> 24)),
            GFByte(static_cast<std::uint8_t>(packed >> 16)),
            GFByte(static_cast<std::uint8_t>(packed >> 8)),
            GFByte(static_cast<std::uint8_t>(packed))};
}

Block random_block(std::mt19937_64& rng) {
    Block b{};
    for (auto& v : b) v = static_cast<std::uint8_t>(rng());
    return b;
}

GFByte fold(const Word& w) { return w[0] + w[1] + w[2] + w[3]; }

}  // namespace

TEST(SBox, MatchesReferenceConstruction) {
    const auto expected = reference_sbox();
    const SBox& sbox = SBox::instance();
    EXPECT_EQ(expected[0x00], 0x63);
    EXPECT_EQ(expected[0x53], 0xED);
    for (unsigned x = 0; x < 256; ++x) {
        ASSERT_EQ(sbox.forward(static_cast<std::uint8_t>(x)), expected[x]) << x;
        ASSERT_EQ(sbox.inverse(expected[x]), x);
    }
}

TEST(AesCore, SubBytesExamples) {
    EXPECT_EQ(sub_bytes(filled(0x00)), filled(0x63));
    EXPECT_EQ(inv_sub_bytes(filled(0x63)), filled(0x00));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const State s = State::from_block(random_block(rng));
        ASSERT_EQ(inv_sub_bytes(sub_bytes(s)), s);
    }
}

TEST(AesCore, BlockLoadsColumnMajor) {
    Block b{};
    for (std::size_t i = 0; i < 16; ++i) b[i] = static_cast<std::uint8_t>(i);
    const State s = State::from_block(b);
    EXPECT_EQ(s(1, 0).value, 1);
    EXPECT_EQ(s(0, 1).value, 4);
    EXPECT_EQ(s(3, 3).value, 15);
    EXPECT_EQ(s.to_block(), b);
}

TEST(AesCore, ShiftRowsMatchesShiftedLayout) {
    // Cell (r, c) holds 0xRC, i.e. paper entry A_{r+1,c+1}.
    State s;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) s(r, c) = GFByte(static_cast<std::uint8_t>(r * 16 + c));
    const State t = shift_rows(s);
    // Row 0 unchanged; row 1 = A22 A23 A24 A21; row 2 = A33 A34 A31 A32; row 3 = A44 A41 A42 A43.
    const std::uint8_t expected[4][4] = {{0x00, 0x01, 0x02, 0x03},
                                         {0x11, 0x12, 0x13, 0x10},
                                         {0x22, 0x23, 0x20, 0x21},
                                         {0x33, 0x30, 0x31, 0x32}};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(t(r, c).value, expected[r][c]);

    EXPECT_EQ(shift_rows(shift_rows(shift_rows(shift_rows(s)))), s);
    EXPECT_EQ(inv_shift_rows(t), s);
}

TEST(AesCore, MixColumnKnownColumns) {
    // Direct evaluation of Y1 = 2X1 + 3X2 + X3 + X4 (and rotations) with the
    // reference multiply.
    auto direct = [](const Word& x) {
        const std::uint8_t a = x[0].value, b = x[1].value, c = x[2].value, d = x[3].value;
        return Word{GFByte(static_cast<std::uint8_t>(ref_mul(2, a) ^ ref_mul(3, b) ^ c ^ d)),
                    GFByte(static_cast<std::uint8_t>(a ^ ref_mul(2, b) ^ ref_mul(3, c) ^ d)),
                    GFByte(static_cast<std::uint8_t>(a ^ b ^ ref_mul(2, c) ^ ref_mul(3, d))),
                    GFByte(static_cast<std::uint8_t>(ref_mul(3, a) ^ b ^ c ^ ref_mul(2, d)))};
    };
    const Word in = column_of(0xDB135345);
    ASSERT_EQ(direct(in), column_of(0x8E4DA1BC));
    EXPECT_EQ(mix_column(in), column_of(0x8E4DA1BC));
    EXPECT_EQ(mix_column(column_of(0xF20A225C)), column_of(0x9FDC589D));
    EXPECT_EQ(mix_column(column_of(0xD4D4D4D5)), column_of(0xD5D5D7D6));
    EXPECT_EQ(mix_column(column_of(0)), column_of(0));
    EXPECT_EQ(inv_mix_column(column_of(0x8E4DA1BC)), in);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Word w = column_of(static_cast<std::uint32_t>(rng()));
        ASSERT_EQ(mix_column(w), direct(w));
    }
}

TEST(AesCore, MixColumnsPreservesColumnXor) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10000; ++i) {
        const Word w = column_of(static_cast<std::uint32_t>(rng()));
        ASSERT_EQ(fold(mix_column(w)), fold(w));
        ASSERT_EQ(fold(inv_mix_column(w)), fold(w));
    }
}

TEST(AesCore, RoundTrips) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10000; ++i) {
        const State s = State::from_block(random_block(rng));
        ASSERT_EQ(inv_shift_rows(shift_rows(s)), s);
        ASSERT_EQ(inv_mix_columns(mix_columns(s)), s);
        ASSERT_EQ(inv_sub_bytes(sub_bytes(s)), s);
    }
}

TEST(AesCore, AddRoundKey) {
    std::mt19937_64 rng(17);
    const State s = State::from_block(random_block(rng));
    const State k = State::from_block(random_block(rng));
    EXPECT_EQ(add_round_key(s, State{}), s);
    EXPECT_EQ(add_round_key(s, s), State{});
    EXPECT_EQ(add_round_key(add_round_key(s, k), k), s);
}

TEST(AesCore, RconSequence) {
    const std::uint8_t expected[] = {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36};
    for (int i = 1; i <= 10; ++i) EXPECT_EQ(rcon(i), expected[i - 1]);
    EXPECT_THROW(rcon(0), std::out_of_range);
    EXPECT_THROW(rcon(11), std::out_of_range);
}

TEST(AesCore, ExpandZeroKey) {
    const RoundKeySchedule ks = expand_key(Block{});
    EXPECT_EQ(ks.keys[0], State{});
    EXPECT_EQ(ks.keys[1].column(0), column_of(0x62636363));
}

TEST(AesCore, ExpandFipsKey) {
    const Block key = parse_block_hex("2b7e151628aed2a6abf7158809cf4f3c");
    const RoundKeySchedule ks = expand_key(key);
    EXPECT_EQ(ks.keys[0].to_block(), key);
    EXPECT_EQ(to_hex(ks.keys[1].to_block()), "a0fafe1788542cb123a339392a6c7605");
    EXPECT_EQ(to_hex(ks.keys[10].to_block()), "d014f9a8c9ee2589e13f0cc8b6630ca6");
}

TEST(AesCore, KnownAnswerVectors) {
    EXPECT_EQ(to_hex(encrypt_block(parse_block_hex("00112233445566778899aabbccddeeff"),
                                   parse_block_hex("000102030405060708090a0b0c0d0e0f"))),
              "69c4e0d86a7b0430d8cdb78070b4c55a");
    EXPECT_EQ(to_hex(decrypt_block(parse_block_hex("69c4e0d86a7b0430d8cdb78070b4c55a"),
                                   parse_block_hex("000102030405060708090a0b0c0d0e0f"))),
              "00112233445566778899aabbccddeeff");
    EXPECT_EQ(to_hex(encrypt_block(parse_block_hex("3243f6a8885a308d313198a2e0370734"),
                                   parse_block_hex("2b7e151628aed2a6abf7158809cf4f3c"))),
              "3925841d02dc09fbdc118597196a0b32");
}

TEST(AesCore, EncryptDecryptRoundTrip) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 10000; ++i) {
        const Block p = random_block(rng);
        const Block k = random_block(rng);
        ASSERT_EQ(decrypt_block(encrypt_block(p, k), k), p);
    }
}

TEST(AesCore, DistinctPlaintextsGiveDistinctCiphertexts) {
    std::mt19937_64 rng(23);
    const Block key = random_block(rng);
    std::set<Block> seen;
    for (int i = 0; i < 1000; ++i) {
        Block p{};
        p[0] = static_cast<std::uint8_t>(i);
        p[1] = static_cast<std::uint8_t>(i >> 8);
        seen.insert(encrypt_block(p, key));
    }
    EXPECT_EQ(seen.size(), 1000U);
}

TEST(AesCore, HexParsing) {
    EXPECT_EQ(to_hex(parse_block_hex("00112233445566778899AABBCCDDEEFF")),
              "00112233445566778899aabbccddeeff");
    EXPECT_THROW(parse_block_hex("0011"), std::invalid_argument);
    EXPECT_THROW(parse_block_hex("zz112233445566778899aabbccddeeff"), std::invalid_argument);
    EXPECT_THROW(parse_block_hex("00112233445566778899aabbccddeeff00"), std::invalid_argument);
}
