#pragma once

#include <cstdint>
#include <vector>

#include "srq/model.hpp"

namespace srq {

// One generatable reference: its normalized value and the component subset
// (bit i = component i in canonical order) that assembles it.
struct RefEntry {
    double value;
    std::uint32_t mask;
};

// All 2^n references a component array can generate, sorted ascending by
// (value, mask). denom is 1 + sum of all actual weights.
struct ReferenceSet {
    std::vector<RefEntry> entries;
    double denom = 1.0;
    int n = 0;
    Grouping grouping;
    std::uint64_t trial = 0;
};

// The ideal grid {i / 2^nk}; delta is the centered fraction of the sample
// space used later by reduced-range entropy (selection always covers the
// full grid).
struct TargetGrid {
    int nk = 0;
    double delta = 1.0;
};

// A chosen boundary set: 2^nk + 1 non-decreasing boundaries with the outer
// two fixed at 0 and 1, plus the assembly mask realizing each of the
// 2^nk - 1 interior boundaries.
struct SelectedQuantizer {
    int nk = 0;
    int n = 0;  // component count (mask width)
    std::vector<double> boundaries;
    std::vector<std::uint32_t> masks;
    Grouping grouping;
    std::uint64_t trial = 0;
};

// Hard cap on enumerable component counts (2^26 entries ~ 1 GiB).
inline constexpr int kMaxEnumerableComponents = 26;

// Enumerates all 2^n subset references. Subset sums accumulate component
// weights in ascending index order, matching decode_assembly bit for bit.
ReferenceSet enumerate_references(const ComponentArray& array);

// The same 2^n values, unsorted and indexed by mask. Cheaper when the caller
// only pools values (histograms) and does not search.
std::vector<double> reference_values(const ComponentArray& array);

// For every interior target i/2^nk picks the reference minimizing the
// absolute error; ties go to the smaller value, then the smaller mask.
// Exact: the sorted enumeration makes the nearest entry a local scan.
SelectedQuantizer select_quantizer_exhaustive(const ReferenceSet& refs, const TargetGrid& grid);

// Approximate selection without enumeration: per target, scans components in
// descending actual weight and keeps those that do not overshoot the target
// numerator. Boundaries are then made non-decreasing by carrying the
// previous (value, mask) pair forward over any inversion.
SelectedQuantizer select_quantizer_greedy(const ComponentArray& array, const TargetGrid& grid);

// Reference value assembled by `mask` (ascending-index accumulation, same
// rounding as enumerate_references).
double decode_assembly(std::uint32_t mask, const ComponentArray& array);

// Maps x in [0, 1) to the code d with boundary_d <= x < boundary_{d+1}.
// Zero-width bins are unreachable; the code owning the non-empty interval
// is returned.
std::uint32_t quantize(double x, const SelectedQuantizer& q);

}  // namespace srq
