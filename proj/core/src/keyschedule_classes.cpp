#include "aesclass/keyschedule_classes.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace aesclass {

GFByte word_class(const Word& w) { return w[0] + w[1] + w[2] + w[3]; }

KeyClassRecord key_class_record(const RoundKeySchedule& schedule, int round) {
    if (round < 0 || round > kRounds) {
        throw std::out_of_range("key_class_record: round must be in 0..10, got " +
                                std::to_string(round));
    }
    const State& key = schedule.keys[static_cast<std::size_t>(round)];
    KeyClassRecord record;
    record.round = round;
    for (std::size_t c = 0; c < 4; ++c) {
        record.ek[c] = word_class(key.column(c));
    }
    if (round < kRounds) {
        record.eg = word_class(key_schedule_g(key.column(3), round + 1));
    }
    return record;
}

KeyClasses predict_next_classes(const KeyClassRecord& record) {
    if (record.round >= kRounds || !record.eg) {
        throw std::invalid_argument("predict_next_classes: round 10 has no successor");
    }
    KeyClasses next;
    next[0] = record.ek[0] + *record.eg;
    next[1] = next[0] + record.ek[1];
    next[2] = next[1] + record.ek[2];
    next[3] = next[2] + record.ek[3];
    return next;
}

bool ScheduleAudit::all_pass() const {
    return std::all_of(transitions.begin(), transitions.end(),
                       [](const TransitionCheck& t) { return t.pass; });
}

int ScheduleAudit::pass_count() const {
    return static_cast<int>(std::count_if(transitions.begin(), transitions.end(),
                                          [](const TransitionCheck& t) { return t.pass; }));
}

ScheduleAudit audit_schedule_classes(const Block& key) {
    const RoundKeySchedule schedule = expand_key(key);
    ScheduleAudit audit;
    for (int round = 0; round < kRounds; ++round) {
        TransitionCheck check;
        check.round = round;
        check.predicted = predict_next_classes(key_class_record(schedule, round));
        check.actual = key_class_record(schedule, round + 1).ek;
        check.pass = check.predicted == check.actual;
        audit.transitions.push_back(check);
    }
    return audit;
}

std::string audit_to_json(const ScheduleAudit& audit) {
    auto hex_list = [](const KeyClasses& k) {
        nlohmann::json list = nlohmann::json::array();
        for (GFByte b : k) {
            list.push_back(to_hex(b));
        }
        return list;
    };
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const TransitionCheck& t : audit.transitions) {
        nlohmann::ordered_json entry;
        entry["round"] = t.round;
        entry["predicted"] = hex_list(t.predicted);
        entry["actual"] = hex_list(t.actual);
        entry["pass"] = t.pass;
        doc.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

}  // namespace aesclass
