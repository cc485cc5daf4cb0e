#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace collapse {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair addresses an
/// independent stream; the block counter advances within a stream. Streams are
/// how trajectories get reproducible, order-independent randomness in parallel
/// ensembles: trajectory i always uses stream i regardless of scheduling.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);
};

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on (0, 1].
    double uniform01();

    /// Standard normal via Box-Muller; draws are buffered in pairs.
    double normal();
    void fill_normals(std::span<double> out);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;  // exhausted
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace collapse
