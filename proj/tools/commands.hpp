#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>

#include "aesclass/aes.hpp"
#include "aesclass/class_algebra.hpp"

namespace aesclass::cli {

enum class Format { Csv, Json };
enum class DistMode { Naive, Fast, Both };

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::size_t trials = 10000;
    std::string out;  ///< Empty means stdout (a directory for sbox-dist).
    Format format = Format::Csv;
    unsigned threads = 1;
};

/**
 * Reproducible randomness for the property runs. std::mt19937_64 is fully
 * specified by the C++ standard; each 64-bit draw is consumed as 8 bytes,
 * least significant first. Distribution objects are never used because
 * their output is implementation-defined.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint8_t byte();
    Block block();
    State state() { return State::from_block(block()); }
    Word word();
    ClassVector class_vector() { return ClassVector{word()}; }
    ShiftPhase phase() { return ShiftPhase::wrap(static_cast<long long>(byte() & 3U)); }

private:
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    int remaining_ = 0;
};

/// splitmix64 finaliser; decorrelates per-property seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Parses "auto" or a positive integer.
unsigned parse_threads(const std::string& text);

struct VerifyOptions {
    /// Test hook: perturbs forward_step_matrix(k) in the forward-step checks.
    std::optional<int> corrupt_phase;
};

int cmd_verify_properties(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out,
                          std::ostream& err);

struct SboxDistOptions {
    DistMode mode = DistMode::Fast;
    bool header = false;
};

int cmd_sbox_dist(const RunConfig& cfg, const SboxDistOptions& opts, std::ostream& out,
                  std::ostream& err);

struct TraceOptions {
    Block key{};
    Block plaintext{};
    bool linearized = false;
    int rounds = kRounds;
};

int cmd_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err);

struct KeyschedOptions {
    std::optional<Block> key;
    std::size_t random = 0;
};

int cmd_keysched(const RunConfig& cfg, const KeyschedOptions& opts, std::ostream& out,
                 std::ostream& err);

int cmd_encrypt(const Block& key, const Block& block, std::ostream& out);
int cmd_decrypt(const Block& key, const Block& block, std::ostream& out);

/// Full command line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aesclass::cli
