#pragma once

#include <string>
#include <vector>

#include "aesclass/aes.hpp"
#include "aesclass/gf256.hpp"

namespace aesclass {

/**
 * Cumulative number of ShiftRows applied (mod 4) since the logical columns
 * last coincided with the physical columns.
 *
 * After k shifts, the byte of logical column j in row r sits at physical
 * column (j - k*r) mod 4. A ShiftRows step moves every logical column into
 * phase k+1 without changing any class value; a MixColumns step at phase
 * k+1 mixes the classes through forward_step_matrix(k).
 */
class ShiftPhase {
public:
    constexpr ShiftPhase() = default;

    /// Throws std::out_of_range unless 0 <= k <= 3.
    explicit ShiftPhase(int k);

    /// Reduces any integer mod 4.
    static constexpr ShiftPhase wrap(long long k) {
        ShiftPhase p;
        p.k_ = static_cast<int>(((k % 4) + 4) % 4);
        return p;
    }

    constexpr int value() const { return k_; }
    constexpr ShiftPhase next() const { return wrap(k_ + 1); }
    constexpr ShiftPhase prev() const { return wrap(k_ + 3); }
    constexpr ShiftPhase advanced(long long steps) const { return wrap(k_ + steps); }

    friend constexpr bool operator==(ShiftPhase, ShiftPhase) = default;

private:
    int k_ = 0;
};

/// A class vector together with the phase its logical columns are in.
struct PhasedClass {
    ClassVector classes;
    ShiftPhase phase;

    friend bool operator==(const PhasedClass&, const PhasedClass&) = default;
};

/// Component j is the XOR of the 4 bytes of logical column j under `phase`.
ClassVector logical_class(const State& s, ShiftPhase phase);

/// Matrix taking classes at `phase` to classes at phase+1 across
/// ShiftRows followed by MixColumns.
ClassMatrix forward_step_matrix(ShiftPhase phase);

/// Inverse of forward_step_matrix(phase): takes classes at phase+1 back to
/// `phase` across InvMixColumns followed by InvShiftRows.
ClassMatrix backward_step_matrix(ShiftPhase phase);

/// Applies `steps` forward steps starting at `phase`.
PhasedClass propagate_forward(const ClassVector& v, ShiftPhase phase, int steps);

/// Undoes `steps` forward steps; `phase` is the phase v is currently in.
/// propagate_backward(propagate_forward(v, k, n), k + n, n) == v.
PhasedClass propagate_backward(const ClassVector& v, ShiftPhase phase, int steps);

/// ShiftRows alone relabels the columns: classes unchanged, phase advances.
PhasedClass propagate_shift_rows(const PhasedClass& c);

/// XOR of the key's logical-column classes into v.
ClassVector add_round_key_class(const ClassVector& v, const State& key, ShiftPhase phase);

// ------------------------------------------------------------------------
// Trajectories
// ------------------------------------------------------------------------

/// One round of AES with SubBytes replaced by the identity map.
struct LinearizedRound {
    int round = 0;
    /// Phase after the round's ShiftRows; the round key is folded at it.
    ShiftPhase phase;
    /// logical_class of the state after the round's AddRoundKey.
    ClassVector observed;
    /// The same value derived from the plaintext class and key classes only.
    ClassVector predicted;

    bool matches() const { return observed == predicted; }
};

/**
 * Runs `rounds` rounds of AES with SubBytes as the identity (AddRoundKey
 * kept) and records, per round, the observed class of the state next to
 * the class predicted purely from the input class and round-key classes.
 * Round 0 (the whitening key) is included as the first entry.
 * Throws std::out_of_range unless 1 <= rounds <= 10.
 */
std::vector<LinearizedRound> trace_linearized(const Block& plaintext, const Block& key,
                                              int rounds);

enum class Stage { Input, SubBytes, ShiftRows, MixColumns, AddRoundKey };

std::string stage_name(Stage stage);

struct TraceStage {
    int round = 0;
    Stage stage = Stage::Input;
    ShiftPhase phase;
    State state;
    ClassVector classes;
};

/// Full AES-128 encryption, recording the state and its class after every
/// stage. The input to each SubBytes is the preceding record.
std::vector<TraceStage> trace_full(const Block& plaintext, const Block& key);

/// Eight lowercase hex digits, Q1 first.
std::string to_hex(const ClassVector& v);

}  // namespace aesclass
