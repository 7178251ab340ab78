#pragma once

#include <array>
#include <cstdint>

namespace risfade {

/// Philox4x32-10 block function (Salmon et al., SC'11): a keyed bijection of a
/// 128-bit counter. Used as a counter-based hash so any random number in a
/// simulation can be addressed directly by its coordinates.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Sequential uniform source over one addressed substream.
///
/// A substream is identified by (seed, point, trial, entry); the words drawn
/// from it are Philox outputs for counters {block, entry, trial, point}. Two
/// streams built from the same coordinates yield the same sequence, and
/// distinct coordinates never share a counter, so trials can be evaluated in
/// any order or on any worker.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t point, std::uint32_t trial, std::uint32_t entry)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          point_(point), trial_(trial), entry_(entry) {}

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

    std::uint64_t next_u64();

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t point_;
    std::uint32_t trial_;
    std::uint32_t entry_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

/// Factory for the substreams of one Monte Carlo trial.
class TrialStreams {
public:
    TrialStreams(std::uint64_t seed, std::uint32_t point, std::uint32_t trial)
        : seed_(seed), point_(point), trial_(trial) {}

    RandomStream substream(std::uint32_t entry) const { return {seed_, point_, trial_, entry}; }

    std::uint64_t seed() const { return seed_; }
    std::uint32_t point() const { return point_; }
    std::uint32_t trial() const { return trial_; }

private:
    std::uint64_t seed_;
    std::uint32_t point_;
    std::uint32_t trial_;
};

}  // namespace risfade
