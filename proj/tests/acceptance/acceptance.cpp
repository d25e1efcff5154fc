// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Usage: aesclass_acceptance <path-to-aesclass-cli> <work-dir>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aesclass/aes.hpp"
#include "aesclass/class_algebra.hpp"
#include "aesclass/keyschedule_classes.hpp"
#include "aesclass/sbox_distribution.hpp"
#include "commands.hpp"

using namespace aesclass;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 0xAC0001;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

GFByte fold(const Word& w) { return w[0] + w[1] + w[2] + w[3]; }

// Exhaustive matrices from criterion 1, reused by criterion 2.
std::optional<CountsMatrix> g_naive_p;
std::optional<CountsMatrix> g_naive_invp;

unsigned worker_count() { return std::max(1U, std::thread::hardware_concurrency()); }

// --------------------------------------------------------------------------

Outcome sbox_distribution_headlines() {
    Outcome o;
    const auto& fwd = SBox::instance().forward_table();
    const auto& inv = SBox::instance().inverse_table();

    const auto start = std::chrono::steady_clock::now();
    const CountsMatrix fast_p = xor_convolve_square(compute_pair_table(fwd));
    const auto fast_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    const CountsMatrix fast_invp = xor_convolve_square(compute_pair_table(inv));

    const unsigned threads = worker_count();
    const auto naive_start = std::chrono::steady_clock::now();
    const CountsMatrix naive_p = compute_counts_naive(fwd, threads);
    const CountsMatrix naive_invp = compute_counts_naive(inv, threads);
    const auto naive_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - naive_start);

    const CountsStats stats = counts_stats(naive_p);
    o.require(naive_p(0, 0) == 198136, "P_counts[0][0] = " + std::to_string(naive_p(0, 0)));
    o.require(stats.other_rows_max == 68392,
              "max over rows 1..255 = " + std::to_string(stats.other_rows_max));
    o.require(stats.row0_min == 65016, "min of row 0 = " + std::to_string(stats.row0_min));
    o.require(stats.other_rows_min == 64128,
              "min over rows 1..255 = " + std::to_string(stats.other_rows_min));
    o.require(fast_time.count() < 1.0,
              "fast path took " + std::to_string(fast_time.count()) + " s");
    o.require(naive_p == fast_p, "naive and fast P_counts differ");
    o.require(naive_invp == fast_invp, "naive and fast InvP_counts differ");
    for (std::size_t x = 0; x < 256; ++x) {
        o.require(naive_p.row_sum(x) == (1ULL << 24), "row sum off at " + std::to_string(x));
    }

    std::ostringstream timing;
    timing << "fast " << fast_time.count() * 1e3 << " ms, naive (both tables) "
           << naive_time.count() << " s";
    if (o.pass) {
        o.detail = timing.str();
    }
    g_naive_p = naive_p;
    g_naive_invp = naive_invp;
    return o;
}

Outcome transpose_relation() {
    Outcome o;
    if (!g_naive_p) g_naive_p = compute_counts_naive(SBox::instance().forward_table(), worker_count());
    if (!g_naive_invp) g_naive_invp = compute_counts_naive(SBox::instance().inverse_table(), worker_count());
    const CountsMatrix& p = *g_naive_p;
    const CountsMatrix& invp = *g_naive_invp;
    std::size_t mismatches = 0;
    for (std::size_t x = 0; x < 256; ++x) {
        for (std::size_t y = 0; y < 256; ++y) {
            mismatches += p(x, y) != invp(y, x) ? 1 : 0;
        }
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " cells differ");
    o.require(transpose_check(p, invp), "transpose_check disagrees with direct scan");
    if (o.pass) o.detail = "65536/65536 cells";
    return o;
}

Outcome column_xor_preserved() {
    Outcome o;
    cli::Rng rng(cli::derive_seed(kSeed, 3));
    for (int i = 0; i < 10000; ++i) {
        const Word w = rng.word();
        o.require(fold(mix_column(w)) == fold(w), "MixColumns breaks XOR on " + to_hex(ClassVector{w}));
        o.require(fold(inv_mix_column(w)) == fold(w),
                  "InvMixColumns breaks XOR on " + to_hex(ClassVector{w}));
    }
    if (o.pass) o.detail = "10000 columns each direction";
    return o;
}

Outcome linear_layer_propagation() {
    Outcome o;
    cli::Rng rng(cli::derive_seed(kSeed, 4));
    for (int k = 0; k < 4; ++k) {
        const ShiftPhase phase(k);
        for (int i = 0; i < 10000; ++i) {
            const State s = rng.state();
            o.require(logical_class(mix_columns(shift_rows(s)), phase.next()) ==
                          forward_step_matrix(phase) * logical_class(s, phase),
                      "forward k=" + std::to_string(k) + " state " + to_hex(s.to_block()));
            o.require(logical_class(inv_shift_rows(inv_mix_columns(s)), phase) ==
                          backward_step_matrix(phase) * logical_class(s, phase.next()),
                      "backward k=" + std::to_string(k) + " state " + to_hex(s.to_block()));
        }
    }
    if (o.pass) o.detail = "4 phases x 10000 states, forward and backward";
    return o;
}

Outcome matrix_algebra() {
    Outcome o;
    for (int k = 0; k < 4; ++k) {
        const ShiftPhase phase(k);
        o.require(forward_step_matrix(phase) * backward_step_matrix(phase) == ClassMatrix::identity(),
                  "forward*backward != I at k=" + std::to_string(k));
        o.require(backward_step_matrix(phase) * forward_step_matrix(phase) == ClassMatrix::identity(),
                  "backward*forward != I at k=" + std::to_string(k));
    }
    const ClassMatrix two_shift = forward_step_matrix(ShiftPhase(1));
    o.require(two_shift * two_shift == ClassMatrix::identity(), "k=1 matrix not self-inverse");
    o.require(forward_step_matrix(ShiftPhase(3)) == ClassMatrix::identity(), "k=3 step not identity");
    return o;
}

Outcome linearized_trace() {
    Outcome o;
    cli::Rng rng(cli::derive_seed(kSeed, 6));
    int rounds_checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const Block p = rng.block();
        const Block key = rng.block();
        for (const LinearizedRound& r : trace_linearized(p, key, kRounds)) {
            o.require(r.matches(), "round " + std::to_string(r.round) + " p=" + to_hex(p) +
                                       " key=" + to_hex(key));
            ++rounds_checked;
        }
    }
    if (o.pass) o.detail = "1000 pairs, " + std::to_string(rounds_checked) + " round checks";
    return o;
}

Outcome key_schedule_recurrences() {
    Outcome o;
    std::vector<Block> keys = {Block{}, parse_block_hex("2b7e151628aed2a6abf7158809cf4f3c")};
    cli::Rng rng(cli::derive_seed(kSeed, 7));
    for (int i = 0; i < 1000; ++i) keys.push_back(rng.block());
    for (const Block& key : keys) {
        const ScheduleAudit audit = audit_schedule_classes(key);
        o.require(audit.transitions.size() == 10 && audit.all_pass(), "key " + to_hex(key));
    }
    if (o.pass) o.detail = std::to_string(keys.size()) + " keys x 10 transitions";
    return o;
}

Outcome aes_anchor() {
    Outcome o;
    const Block key = parse_block_hex("000102030405060708090a0b0c0d0e0f");
    const Block p = parse_block_hex("00112233445566778899aabbccddeeff");
    o.require(to_hex(encrypt_block(p, key)) == "69c4e0d86a7b0430d8cdb78070b4c55a", "KAT mismatch");
    o.require(decrypt_block(encrypt_block(p, key), key) == p, "KAT decrypt mismatch");
    cli::Rng rng(cli::derive_seed(kSeed, 8));
    for (int i = 0; i < 10000; ++i) {
        const Block pt = rng.block();
        const Block k = rng.block();
        o.require(decrypt_block(encrypt_block(pt, k), k) == pt, "round trip " + to_hex(pt));
    }
    if (o.pass) o.detail = "KAT + 10000 round trips";
    return o;
}

// --------------------------------------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_to(const std::string& cli, const std::string& args, const fs::path& stdout_path) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + stdout_path.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
}

Outcome cli_determinism(const std::string& cli, const fs::path& work) {
    Outcome o;
    struct Case {
        std::string name;
        std::string args;
        bool has_out_dir;
    };
    const std::vector<Case> cases = {
        {"verify", "verify-properties --seed 12345 --trials 2000", false},
        {"keysched", "keysched --random 100 --seed 99", false},
        {"sbox_naive", "sbox-dist --mode naive --format csv", true},
        {"sbox_fast_json", "sbox-dist --mode fast --format json", true},
    };
    const std::vector<std::string> thread_settings = {"1", "3", "auto"};

    for (const Case& c : cases) {
        std::string reference_stdout;
        std::vector<std::pair<std::string, std::string>> reference_files;
        // Two runs at one thread count, then the other thread counts.
        std::vector<std::string> runs = {"1"};
        runs.insert(runs.end(), thread_settings.begin(), thread_settings.end());
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const fs::path dir = work / (c.name + "_" + std::to_string(i));
            fs::remove_all(dir);
            fs::create_directories(dir);
            std::string args = c.args + " --threads " + runs[i];
            if (c.has_out_dir) args += " --out \"" + (dir / "files").string() + "\"";
            const int status = run_to(cli, args, dir / "stdout.txt");
            o.require(status == 0, c.name + " exited with status " + std::to_string(status));

            std::string out = slurp(dir / "stdout.txt");
            std::vector<std::pair<std::string, std::string>> files;
            if (c.has_out_dir) {
                std::vector<fs::path> paths;
                for (const auto& e : fs::directory_iterator(dir / "files")) paths.push_back(e.path());
                std::sort(paths.begin(), paths.end());
                for (const auto& p : paths) files.emplace_back(p.filename().string(), slurp(p));
            }
            if (i == 0) {
                o.require(!out.empty(), c.name + " produced no output");
                reference_stdout = std::move(out);
                reference_files = std::move(files);
            } else {
                o.require(out == reference_stdout,
                          c.name + " stdout differs with --threads " + runs[i]);
                o.require(files == reference_files,
                          c.name + " files differ with --threads " + runs[i]);
            }
        }
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " commands x 4 runs byte-identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: aesclass_acceptance <aesclass-cli> <work-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    fs::create_directories(work);

    struct Criterion {
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC1 S-box class counts: headline numbers, fast < 1 s, naive == fast",
         sbox_distribution_headlines},
        {"AC2 P_counts == transpose(InvP_counts), all cells", transpose_relation},
        {"AC3 MixColumns/InvMixColumns preserve column XOR", column_xor_preserved},
        {"AC4 forward/backward class propagation through the linear layer",
         linear_layer_propagation},
        {"AC5 step matrix algebra", matrix_algebra},
        {"AC6 linearized 10-round class trajectories", linearized_trace},
        {"AC7 key-schedule class recurrences", key_schedule_recurrences},
        {"AC8 AES-128 known answer and round trips", aes_anchor},
        {"AC9 CLI output independent of run and thread count",
         [&] { return cli_determinism(cli, work); }},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.label;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
