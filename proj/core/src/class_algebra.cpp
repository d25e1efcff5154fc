#include "aesclass/class_algebra.hpp"

#include <stdexcept>

namespace aesclass {

ShiftPhase::ShiftPhase(int k) : k_(k) {
    if (k < 0 || k > 3) {
        throw std::out_of_range("shift phase must be in 0..3, got " + std::to_string(k));
    }
}

ClassVector logical_class(const State& s, ShiftPhase phase) {
    const std::size_t k = static_cast<std::size_t>(phase.value());
    ClassVector out;
    for (std::size_t j = 0; j < 4; ++j) {
        GFByte acc;
        for (std::size_t r = 0; r < 4; ++r) {
            // (j - k*r) mod 4, kept non-negative.
            acc += s(r, (j + 16 - k * r) % 4);
        }
        out[j] = acc;
    }
    return out;
}

ClassMatrix forward_step_matrix(ShiftPhase phase) {
    switch (phase.value()) {
        case 0:
            return ClassMatrix::from_rows(
                {{{2, 3, 1, 1}, {1, 2, 3, 1}, {1, 1, 2, 3}, {3, 1, 1, 2}}});
        case 1:
            return ClassMatrix::from_rows(
                {{{3, 0, 2, 0}, {0, 3, 0, 2}, {2, 0, 3, 0}, {0, 2, 0, 3}}});
        case 2:
            return ClassMatrix::from_rows(
                {{{2, 1, 1, 3}, {3, 2, 1, 1}, {1, 3, 2, 1}, {1, 1, 3, 2}}});
        default:
            return ClassMatrix::identity();
    }
}

ClassMatrix backward_step_matrix(ShiftPhase phase) {
    switch (phase.value()) {
        case 0:
            return ClassMatrix::from_rows(
                {{{14, 11, 13, 9}, {9, 14, 11, 13}, {13, 9, 14, 11}, {11, 13, 9, 14}}});
        case 1:
            // Self-inverse: 3*3 + 2*2 = 1 and 3*2 + 2*3 = 0.
            return forward_step_matrix(phase);
        case 2:
            return ClassMatrix::from_rows(
                {{{14, 9, 13, 11}, {11, 14, 9, 13}, {13, 11, 14, 9}, {9, 13, 11, 14}}});
        default:
            return ClassMatrix::identity();
    }
}

PhasedClass propagate_forward(const ClassVector& v, ShiftPhase phase, int steps) {
    if (steps < 0) {
        throw std::invalid_argument("propagate_forward: steps must be >= 0");
    }
    PhasedClass c{v, phase};
    for (int i = 0; i < steps; ++i) {
        c.classes = forward_step_matrix(c.phase) * c.classes;
        c.phase = c.phase.next();
    }
    return c;
}

PhasedClass propagate_backward(const ClassVector& v, ShiftPhase phase, int steps) {
    if (steps < 0) {
        throw std::invalid_argument("propagate_backward: steps must be >= 0");
    }
    PhasedClass c{v, phase};
    for (int i = 0; i < steps; ++i) {
        c.phase = c.phase.prev();
        c.classes = backward_step_matrix(c.phase) * c.classes;
    }
    return c;
}

PhasedClass propagate_shift_rows(const PhasedClass& c) { return {c.classes, c.phase.next()}; }

ClassVector add_round_key_class(const ClassVector& v, const State& key, ShiftPhase phase) {
    return v + logical_class(key, phase);
}

std::vector<LinearizedRound> trace_linearized(const Block& plaintext, const Block& key,
                                              int rounds) {
    if (rounds < 1 || rounds > kRounds) {
        throw std::out_of_range("trace_linearized: rounds must be in 1..10");
    }
    const RoundKeySchedule schedule = expand_key(key);

    std::vector<LinearizedRound> out;
    out.reserve(static_cast<std::size_t>(rounds) + 1);

    // Observed side: real state bytes, SubBytes skipped.
    State s = add_round_key(State::from_block(plaintext), schedule.keys[0]);
    ShiftPhase phase;

    // Predicted side: only class vectors ever cross this line.
    PhasedClass predicted{logical_class(State::from_block(plaintext), phase), phase};
    predicted.classes = add_round_key_class(predicted.classes, schedule.keys[0], phase);

    out.push_back({0, phase, logical_class(s, phase), predicted.classes});

    for (int round = 1; round <= rounds; ++round) {
        const State& round_key = schedule.keys[static_cast<std::size_t>(round)];
        s = shift_rows(s);
        if (round != kRounds) {
            s = mix_columns(s);
            predicted = propagate_forward(predicted.classes, predicted.phase, 1);
        } else {
            predicted = propagate_shift_rows(predicted);
        }
        phase = phase.next();
        s = add_round_key(s, round_key);
        predicted.classes = add_round_key_class(predicted.classes, round_key, predicted.phase);

        out.push_back({round, phase, logical_class(s, phase), predicted.classes});
    }
    return out;
}

std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::Input: return "input";
        case Stage::SubBytes: return "sub_bytes";
        case Stage::ShiftRows: return "shift_rows";
        case Stage::MixColumns: return "mix_columns";
        case Stage::AddRoundKey: return "add_round_key";
    }
    return "unknown";
}

std::vector<TraceStage> trace_full(const Block& plaintext, const Block& key) {
    const RoundKeySchedule schedule = expand_key(key);
    std::vector<TraceStage> out;
    ShiftPhase phase;
    State s = State::from_block(plaintext);

    auto record = [&](int round, Stage stage) {
        out.push_back({round, stage, phase, s, logical_class(s, phase)});
    };

    record(0, Stage::Input);
    s = add_round_key(s, schedule.keys[0]);
    record(0, Stage::AddRoundKey);

    for (int round = 1; round <= kRounds; ++round) {
        s = sub_bytes(s);
        record(round, Stage::SubBytes);
        s = shift_rows(s);
        phase = phase.next();
        record(round, Stage::ShiftRows);
        if (round != kRounds) {
            s = mix_columns(s);
            record(round, Stage::MixColumns);
        }
        s = add_round_key(s, schedule.keys[static_cast<std::size_t>(round)]);
        record(round, Stage::AddRoundKey);
    }
    return out;
}

std::string to_hex(const ClassVector& v) {
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        out += to_hex(v[i]);
    }
    return out;
}

}  // namespace aesclass
