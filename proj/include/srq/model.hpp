#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srq {

// Intrinsic quantizer geometry: an n0-bit device owns 2^n0 - 1 unit cells.
struct QuantizerSpec {
    int n0 = 0;
    std::uint32_t unit_count = 0;

    static QuantizerSpec make(int n0);
};

enum class GroupingKind : std::uint8_t {
    BinaryWeighted = 0,
    HalfSplit = 1,
    Uniform = 2,
    RedundantSub = 3,  // general two-array redundant family, parameters (s, n0prime)
    Raw = 4,           // user-supplied validated weight list
};

struct Grouping {
    GroupingKind kind = GroupingKind::BinaryWeighted;
    int s = 0;        // RedundantSub only
    int n0prime = 0;  // RedundantSub only

    static Grouping bw() { return {GroupingKind::BinaryWeighted, 0, 0}; }
    static Grouping hs() { return {GroupingKind::HalfSplit, 0, 0}; }
    static Grouping un() { return {GroupingKind::Uniform, 0, 0}; }
    static Grouping rs(int s, int n0prime) { return {GroupingKind::RedundantSub, s, n0prime}; }
    static Grouping raw() { return {GroupingKind::Raw, 0, 0}; }

    bool operator==(const Grouping&) const = default;
};

// Short text form used in CSV/JSON and on the command line:
// "bw", "hs", "un", "raw", "rs:<s>:<n0prime>".
std::string to_string(const Grouping& g);
Grouping grouping_from_string(const std::string& text);

// A grouping's component list: nominal integer weights summing to 2^n0 - 1
// plus the per-instance actual weights. Component order is canonical (fixed
// by the constructing operation); bitmask semantics depend on it.
struct ComponentArray {
    QuantizerSpec spec;
    Grouping grouping;
    std::vector<std::uint32_t> nominal;
    std::vector<double> actual;   // same length; >= 0
    std::uint64_t trial = 0;      // which mismatch draw produced `actual`

    int n() const { return static_cast<int>(nominal.size()); }
};

// Unit-cell mismatch: each cell is Gaussian with unity mean and relative
// standard deviation sigma_m.
struct MismatchModel {
    double sigma_m = 0.0;
    std::uint64_t master_seed = 0;
};

// Draws actual weights for one trial. A component of nominal weight w is the
// sum of w i.i.d. Normal(1, sigma_m^2) cells, so it is sampled directly from
// Normal(w, w * sigma_m^2) and clamped below at zero. The draw is a pure
// function of (master_seed, trial_index, component index).
ComponentArray sample_actual_weights(const ComponentArray& array, const MismatchModel& model,
                                     std::uint64_t trial_index);

}  // namespace srq
