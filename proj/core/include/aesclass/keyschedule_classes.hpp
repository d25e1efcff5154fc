#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aesclass/aes.hpp"

namespace aesclass {

using KeyClasses = std::array<GFByte, 4>;

/// Column classes of one round key, plus the class of G applied to its
/// last column (absent for round 10, which has no successor).
struct KeyClassRecord {
    int round = 0;
    KeyClasses ek{};
    std::optional<GFByte> eg;
};

/// XOR of the four bytes of a word.
GFByte word_class(const Word& w);

/// Throws std::out_of_range unless 0 <= round <= 10. EG includes Rcon.
KeyClassRecord key_class_record(const RoundKeySchedule& schedule, int round);

/**
 * Chained recurrences for the next round's column classes:
 *   EK0' = EK0 + EG,  EK1' = EK0' + EK1,  EK2' = EK1' + EK2,  EK3' = EK2' + EK3.
 * Throws std::invalid_argument for a round-10 record.
 */
KeyClasses predict_next_classes(const KeyClassRecord& record);

struct TransitionCheck {
    int round = 0;  ///< Transition round -> round + 1.
    KeyClasses predicted{};
    KeyClasses actual{};
    bool pass = false;
};

struct ScheduleAudit {
    std::vector<TransitionCheck> transitions;

    bool all_pass() const;
    int pass_count() const;
};

ScheduleAudit audit_schedule_classes(const Block& key);

/// [{"round": i, "predicted": ["..", ...], "actual": [...], "pass": bool}, ...]
std::string audit_to_json(const ScheduleAudit& audit);

}  // namespace aesclass
