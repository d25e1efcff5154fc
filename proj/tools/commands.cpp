#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aesclass/keyschedule_classes.hpp"
#include "aesclass/sbox_distribution.hpp"

namespace aesclass::cli {

// ------------------------------------------------------------------------
// Randomness
// ------------------------------------------------------------------------

std::uint8_t Rng::byte() {
    if (remaining_ == 0) {
        buffer_ = engine_();
        remaining_ = 8;
    }
    const auto b = static_cast<std::uint8_t>(buffer_ & 0xFFU);
    buffer_ >>= 8;
    --remaining_;
    return b;
}

Block Rng::block() {
    Block b{};
    for (std::uint8_t& v : b) {
        v = byte();
    }
    return b;
}

Word Rng::word() {
    return {GFByte(byte()), GFByte(byte()), GFByte(byte()), GFByte(byte())};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

unsigned parse_threads(const std::string& text) {
    if (text == "auto") {
        return std::max(1U, std::thread::hardware_concurrency());
    }
    std::size_t pos = 0;
    unsigned long n = 0;
    try {
        n = std::stoul(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || n == 0 || n > 1024) {
        throw std::invalid_argument("--threads expects a positive integer or \"auto\", got \"" +
                                    text + "\"");
    }
    return static_cast<unsigned>(n);
}

// ------------------------------------------------------------------------
// verify-properties
// ------------------------------------------------------------------------

namespace {

struct Counterexample {
    std::string input;
    int phase = -1;
    std::string expected;
    std::string actual;
};

using CheckResult = std::optional<Counterexample>;
using Check = std::function<CheckResult(Rng&)>;

struct Property {
    std::string name;
    Check check;
    /// Deterministic algebraic checks run a fixed number of cases.
    std::size_t fixed_trials = 0;
};

std::string state_hex(const State& s) { return to_hex(s.to_block()); }

std::string word_hex(const Word& w) { return to_hex(ClassVector{w}); }

std::string hex_of(GFByte b) { return to_hex(b); }
std::string hex_of(const ClassVector& v) { return to_hex(v); }
std::string hex_of(const Word& w) { return word_hex(w); }
std::string hex_of(const State& s) { return state_hex(s); }

template <typename T>
CheckResult compare(const std::string& input, int phase, const T& expected, const T& actual) {
    if (expected == actual) {
        return std::nullopt;
    }
    return Counterexample{input, phase, hex_of(expected), hex_of(actual)};
}

std::vector<Property> build_properties(const VerifyOptions& opts) {
    auto forward_matrix = [corrupt = opts.corrupt_phase](ShiftPhase k) {
        ClassMatrix m = forward_step_matrix(k);
        if (corrupt && *corrupt == k.value()) {
            m[0][0] += GFByte(1);
        }
        return m;
    };

    std::vector<Property> props;

    props.push_back({"mix_columns_preserves_column_xor", [](Rng& rng) {
                         const Word x = rng.word();
                         return compare(word_hex(x), -1, word_class(x), word_class(mix_column(x)));
                     }});
    props.push_back({"inv_mix_columns_preserves_column_xor", [](Rng& rng) {
                         const Word x = rng.word();
                         return compare(word_hex(x), -1, word_class(x),
                                        word_class(inv_mix_column(x)));
                     }});

    for (int k = 0; k < 4; ++k) {
        const ShiftPhase phase(k);
        props.push_back({"forward_step_phase_" + std::to_string(k),
                         [phase, forward_matrix](Rng& rng) {
                             const State s = rng.state();
                             const ClassVector expected =
                                 forward_matrix(phase) * logical_class(s, phase);
                             const ClassVector actual =
                                 logical_class(mix_columns(shift_rows(s)), phase.next());
                             return compare(state_hex(s), phase.value(), expected, actual);
                         }});
    }
    for (int k = 0; k < 4; ++k) {
        const ShiftPhase phase(k);
        props.push_back({"backward_step_phase_" + std::to_string(k), [phase](Rng& rng) {
                             const State s = rng.state();
                             const ClassVector expected =
                                 backward_step_matrix(phase) * logical_class(s, phase.next());
                             const ClassVector actual =
                                 logical_class(inv_shift_rows(inv_mix_columns(s)), phase);
                             return compare(state_hex(s), phase.value(), expected, actual);
                         }});
    }

    props.push_back({"step_matrices_are_inverse_pairs",
                     [k = 0](Rng&) mutable -> CheckResult {
                         const ShiftPhase phase(k++ % 4);
                         const ClassMatrix product =
                             forward_step_matrix(phase) * backward_step_matrix(phase);
                         if (product == ClassMatrix::identity()) {
                             return std::nullopt;
                         }
                         std::string got;
                         for (std::size_t r = 0; r < 4; ++r) {
                             got += (r ? "/" : "") + to_hex(ClassVector{product[r]});
                         }
                         return Counterexample{"forward*backward", phase.value(),
                                               "01000000/00010000/00000100/00000001", got};
                     },
                     4});

    props.push_back({"logical_class_phase1_matches_inv_shift_rows", [](Rng& rng) {
                         const State s = rng.state();
                         return compare(state_hex(s), 1, logical_class(inv_shift_rows(s), {}),
                                        logical_class(s, ShiftPhase(1)));
                     }});

    props.push_back({"shift_rows_round_trip", [](Rng& rng) {
                         const State s = rng.state();
                         return compare(state_hex(s), -1, s, inv_shift_rows(shift_rows(s)));
                     }});
    props.push_back({"mix_columns_round_trip", [](Rng& rng) {
                         const State s = rng.state();
                         return compare(state_hex(s), -1, s, inv_mix_columns(mix_columns(s)));
                     }});
    props.push_back({"sub_bytes_round_trip", [](Rng& rng) {
                         const State s = rng.state();
                         return compare(state_hex(s), -1, s, inv_sub_bytes(sub_bytes(s)));
                     }});

    props.push_back({"propagate_four_steps_round_trip", [](Rng& rng) {
                         const ClassVector v = rng.class_vector();
                         const ShiftPhase k = rng.phase();
                         const PhasedClass fwd = propagate_forward(v, k, 4);
                         const PhasedClass back = propagate_backward(fwd.classes, fwd.phase, 4);
                         return compare(to_hex(v), k.value(), v, back.classes);
                     }});

    props.push_back({"add_round_key_class_linearity", [](Rng& rng) {
                         const State s = rng.state();
                         const State key = rng.state();
                         const ShiftPhase k = rng.phase();
                         return compare(state_hex(s) + ":" + state_hex(key), k.value(),
                                        add_round_key_class(logical_class(s, k), key, k),
                                        logical_class(add_round_key(s, key), k));
                     }});

    props.push_back({"linearized_trace_ten_rounds", [](Rng& rng) -> CheckResult {
                         const Block p = rng.block();
                         const Block key = rng.block();
                         for (const LinearizedRound& r : trace_linearized(p, key, kRounds)) {
                             if (!r.matches()) {
                                 return Counterexample{to_hex(p) + ":" + to_hex(key),
                                                       r.phase.value(), to_hex(r.predicted),
                                                       to_hex(r.observed)};
                             }
                         }
                         return std::nullopt;
                     }});

    props.push_back({"key_schedule_class_recurrences", [](Rng& rng) -> CheckResult {
                         const Block key = rng.block();
                         for (const TransitionCheck& t : audit_schedule_classes(key).transitions) {
                             if (!t.pass) {
                                 return Counterexample{to_hex(key), -1,
                                                       word_hex(t.predicted), word_hex(t.actual)};
                             }
                         }
                         return std::nullopt;
                     }});

    props.push_back({"encrypt_decrypt_round_trip", [](Rng& rng) {
                         const Block p = rng.block();
                         const Block key = rng.block();
                         return compare(to_hex(p) + ":" + to_hex(key), -1,
                                        State::from_block(p),
                                        State::from_block(decrypt_block(encrypt_block(p, key), key)));
                     }});

    return props;
}

}  // namespace

int cmd_verify_properties(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out,
                          std::ostream& err) {
    if (cfg.trials == 0) {
        err << "warning: trials=0, randomized properties pass vacuously\n";
    }

    const std::vector<Property> props = build_properties(opts);

    nlohmann::ordered_json report;
    report["seed"] = cfg.seed;
    report["trials"] = cfg.trials;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();

    bool all_pass = true;
    bool reported = false;
    for (std::size_t i = 0; i < props.size(); ++i) {
        const Property& prop = props[i];
        Rng rng(derive_seed(cfg.seed, i));
        const std::size_t trials = prop.fixed_trials ? prop.fixed_trials : cfg.trials;
        std::size_t passed = 0;
        std::optional<Counterexample> first;
        for (std::size_t t = 0; t < trials; ++t) {
            if (auto failure = prop.check(rng)) {
                if (!first) {
                    first = std::move(failure);
                }
            } else {
                ++passed;
            }
        }

        nlohmann::ordered_json entry;
        entry["name"] = prop.name;
        entry["trials"] = trials;
        entry["passed"] = passed;
        entry["pass"] = passed == trials;
        if (first) {
            nlohmann::ordered_json ce;
            ce["input"] = first->input;
            ce["phase"] = first->phase;
            ce["expected"] = first->expected;
            ce["actual"] = first->actual;
            entry["counterexample"] = ce;
            all_pass = false;
            if (!reported) {
                err << "FAIL " << prop.name << ": input " << first->input;
                if (first->phase >= 0) {
                    err << " phase " << first->phase;
                }
                err << " expected " << first->expected << " actual " << first->actual << '\n';
                reported = true;
            }
        }
        entries.push_back(std::move(entry));
    }
    report["properties"] = std::move(entries);
    report["pass"] = all_pass;

    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out << " for writing\n";
            return 2;
        }
        file << text;
    }
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------------
// sbox-dist
// ------------------------------------------------------------------------

namespace {

struct Headline {
    const char* label;
    std::uint64_t value;
    std::uint64_t expected;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    file << text;
    if (!file) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string matrix_text(const CountsMatrix& c, Format format, bool header) {
    if (format == Format::Json) {
        return counts_to_json(c);
    }
    std::ostringstream ss;
    write_counts_csv(ss, c, header);
    return ss.str();
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

int cmd_sbox_dist(const RunConfig& cfg, const SboxDistOptions& opts, std::ostream& out,
                  std::ostream& err) {
    const SBox& sbox = SBox::instance();
    const auto& fwd = sbox.forward_table();
    const auto& inv = sbox.inverse_table();

    CountsMatrix p;
    CountsMatrix invp;
    bool ok = true;

    if (opts.mode != DistMode::Naive) {
        p = xor_convolve_square(compute_pair_table(fwd));
        invp = xor_convolve_square(compute_pair_table(inv));
    }
    if (opts.mode != DistMode::Fast) {
        CountsMatrix naive_p = compute_counts_naive(fwd, cfg.threads);
        CountsMatrix naive_invp = compute_counts_naive(inv, cfg.threads);
        if (opts.mode == DistMode::Both) {
            const bool same = naive_p == p && naive_invp == invp;
            ok = ok && same;
            out << "oracle equivalence: " << verdict(same) << '\n';
        }
        p = std::move(naive_p);
        invp = std::move(naive_invp);
    }

    const CountsStats stats = counts_stats(p);
    const CountsStats inv_stats = counts_stats(invp);

    bool rows_ok = true;
    for (std::size_t x = 0; x < p.dim(); ++x) {
        rows_ok = rows_ok && p.row_sum(x) == (1ULL << 24) && invp.row_sum(x) == (1ULL << 24);
    }
    out << "row sums == 2^24: " << verdict(rows_ok) << '\n';
    ok = ok && rows_ok;

    const Headline headlines[] = {
        {"P_counts[0][0]", p(0, 0), 198136},
        {"max of row 0", stats.row0_max, 198136},
        {"max over rows 1..255", stats.other_rows_max, 68392},
        {"min of row 0", stats.row0_min, 65016},
        {"min over rows 1..255", stats.other_rows_min, 64128},
    };
    for (const Headline& h : headlines) {
        const bool pass = h.value == h.expected;
        out << h.label << " = " << h.value << " (expected " << h.expected
            << "): " << verdict(pass) << '\n';
        ok = ok && pass;
    }

    const bool transposed = transpose_check(p, invp);
    out << "P_counts == InvP_counts^T: " << verdict(transposed) << '\n';
    ok = ok && transposed;
    out << "P_counts symmetric: " << (is_symmetric(p) ? "yes" : "no") << '\n';
    out << std::fixed << std::setprecision(6) << "P_dist[0][0] = "
        << dist_from_counts(p)(0, 0) << '\n';

    if (!cfg.out.empty()) {
        try {
            const std::filesystem::path dir(cfg.out);
            std::filesystem::create_directories(dir);
            const std::string ext = cfg.format == Format::Json ? ".json" : ".csv";
            write_file(dir / ("p_counts" + ext), matrix_text(p, cfg.format, opts.header));
            write_file(dir / ("inv_p_counts" + ext), matrix_text(invp, cfg.format, opts.header));
            write_file(dir / "p_counts_stats.json", stats_to_json(stats));
            write_file(dir / "inv_p_counts_stats.json", stats_to_json(inv_stats));
            if (opts.mode == DistMode::Both) {
                write_file(dir / "equivalence.txt",
                           std::string("oracle equivalence: ") + verdict(ok) + "\n");
            }
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
    }

    return ok ? 0 : 1;
}

// ------------------------------------------------------------------------
// trace / keysched / encrypt / decrypt
// ------------------------------------------------------------------------

int cmd_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.linearized) {
        const auto rounds = trace_linearized(opts.plaintext, opts.key, opts.rounds);
        out << "round phase observed predicted match\n";
        int matched = 0;
        for (const LinearizedRound& r : rounds) {
            out << std::setw(5) << r.round << ' ' << std::setw(5) << r.phase.value() << ' '
                << to_hex(r.observed) << ' ' << std::setw(9) << to_hex(r.predicted) << ' '
                << (r.matches() ? "yes" : "NO") << '\n';
            matched += r.matches() ? 1 : 0;
        }
        out << "matched " << matched << "/" << rounds.size() << '\n';
        if (matched != static_cast<int>(rounds.size())) {
            err << "error: linearized prediction diverged from observed classes\n";
            return 1;
        }
        return 0;
    }

    out << "round stage         phase class    state\n";
    for (const TraceStage& st : trace_full(opts.plaintext, opts.key)) {
        out << std::setw(5) << st.round << ' ' << std::left << std::setw(13)
            << stage_name(st.stage) << std::right << ' ' << std::setw(5) << st.phase.value()
            << ' ' << to_hex(st.classes) << ' ' << to_hex(st.state.to_block()) << '\n';
    }
    return 0;
}

int cmd_keysched(const RunConfig& cfg, const KeyschedOptions& opts, std::ostream& out,
                 std::ostream& err) {
    std::string text;
    bool ok = true;
    if (opts.random == 0) {
        const ScheduleAudit audit = audit_schedule_classes(opts.key.value_or(Block{}));
        ok = audit.all_pass();
        text = audit_to_json(audit);
    } else {
        Rng rng(cfg.seed);
        nlohmann::ordered_json doc;
        nlohmann::ordered_json keys = nlohmann::ordered_json::array();
        std::size_t passing = 0;
        for (std::size_t i = 0; i < opts.random; ++i) {
            const Block key = rng.block();
            const ScheduleAudit audit = audit_schedule_classes(key);
            passing += audit.all_pass() ? 1 : 0;
            nlohmann::ordered_json entry;
            entry["key"] = to_hex(key);
            entry["pass"] = audit.all_pass();
            entry["transitions"] = nlohmann::ordered_json::parse(audit_to_json(audit));
            keys.push_back(std::move(entry));
        }
        doc["seed"] = cfg.seed;
        doc["keys"] = opts.random;
        doc["passing"] = passing;
        doc["audits"] = std::move(keys);
        ok = passing == opts.random;
        text = doc.dump(2) + "\n";
    }

    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out << " for writing\n";
            return 2;
        }
        file << text;
    }
    if (!ok) {
        err << "error: key-schedule class recurrence failed\n";
    }
    return ok ? 0 : 1;
}

int cmd_encrypt(const Block& key, const Block& block, std::ostream& out) {
    out << to_hex(encrypt_block(block, key)) << '\n';
    return 0;
}

int cmd_decrypt(const Block& key, const Block& block, std::ostream& out) {
    out << to_hex(decrypt_block(block, key)) << '\n';
    return 0;
}

// ------------------------------------------------------------------------
// Command line
// ------------------------------------------------------------------------

namespace {

Block hex_arg(const std::string& text, const char* what) {
    try {
        return parse_block_hex(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(what, e.what());
    }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivalence-class experiments on AES-128", "aesclass"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string threads_text = "1";
    std::string format_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Seed for randomized runs");
        sub->add_option("--trials", cfg.trials, "Trials per property");
        sub->add_option("--out", cfg.out, "Output path");
        sub->add_option("--threads", threads_text, "Worker threads: <n> or auto");
    };

    auto* verify = app.add_subcommand("verify-properties", "Randomized class-algebra invariants");
    add_common(verify);
    VerifyOptions verify_opts;
    int corrupt = -1;
    verify->add_option("--corrupt-phase", corrupt, "Perturb a forward matrix (negative control)")
        ->group("");
    verify->add_option("--format", format_text, "Report format (json)")
        ->check(CLI::IsMember({"json"}));

    auto* dist = app.add_subcommand("sbox-dist", "SubBytes class-transition count matrices");
    add_common(dist);
    SboxDistOptions dist_opts;
    std::string mode_text = "fast";
    dist->add_option("--mode", mode_text, "naive | fast | both")
        ->check(CLI::IsMember({"naive", "fast", "both"}));
    dist->add_option("--format", format_text, "Matrix format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    dist->add_flag("--header", dist_opts.header, "Write a header line in CSV output");

    auto* trace = app.add_subcommand("trace", "Per-stage class trajectory of one encryption");
    std::string key_text(32, '0');
    std::string block_text(32, '0');
    TraceOptions trace_opts;
    trace->add_option("--key", key_text, "Key, 32 hex digits")->required();
    trace->add_option("--plaintext", block_text, "Plaintext, 32 hex digits")->required();
    trace->add_flag("--linearized", trace_opts.linearized, "Replace SubBytes by the identity");
    trace->add_option("--rounds", trace_opts.rounds, "Rounds for --linearized (1..10)")
        ->check(CLI::Range(1, kRounds));

    auto* keysched = app.add_subcommand("keysched", "Audit key-schedule class recurrences");
    add_common(keysched);
    std::string keysched_key;
    KeyschedOptions keysched_opts;
    keysched->add_option("--key", keysched_key, "Key, 32 hex digits");
    keysched->add_option("--random", keysched_opts.random, "Audit N seeded random keys");

    auto* encrypt = app.add_subcommand("encrypt", "Encrypt one block");
    auto* decrypt = app.add_subcommand("decrypt", "Decrypt one block");
    for (CLI::App* sub : {encrypt, decrypt}) {
        sub->add_option("--key", key_text, "Key, 32 hex digits")->required();
        sub->add_option("--block", block_text, "Block, 32 hex digits")->required();
    }

    try {
        app.parse(argc, argv);
        cfg.threads = parse_threads(threads_text);

        if (*verify) {
            cfg.subcommand = "verify-properties";
            if (corrupt >= 0) {
                verify_opts.corrupt_phase = corrupt;
            }
            return cmd_verify_properties(cfg, verify_opts, out, err);
        }
        if (*dist) {
            cfg.subcommand = "sbox-dist";
            cfg.format = format_text == "json" ? Format::Json : Format::Csv;
            dist_opts.mode = mode_text == "naive"  ? DistMode::Naive
                             : mode_text == "both" ? DistMode::Both
                                                   : DistMode::Fast;
            return cmd_sbox_dist(cfg, dist_opts, out, err);
        }
        if (*trace) {
            trace_opts.key = hex_arg(key_text, "--key");
            trace_opts.plaintext = hex_arg(block_text, "--plaintext");
            return cmd_trace(trace_opts, out, err);
        }
        if (*keysched) {
            cfg.subcommand = "keysched";
            if (!keysched_key.empty()) {
                keysched_opts.key = hex_arg(keysched_key, "--key");
            }
            return cmd_keysched(cfg, keysched_opts, out, err);
        }
        if (*encrypt) {
            return cmd_encrypt(hex_arg(key_text, "--key"), hex_arg(block_text, "--block"), out);
        }
        if (*decrypt) {
            return cmd_decrypt(hex_arg(key_text, "--key"), hex_arg(block_text, "--block"), out);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace aesclass::cli
