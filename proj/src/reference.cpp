#include "srq/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace srq {

namespace {

// Left-to-right ascending-index sum; the single rounding order shared by
// enumeration, decoding and the denominator.
double ascending_sum(const std::vector<double>& weights) {
    double acc = 0.0;
    for (double w : weights) acc += w;
    return acc;
}

void check_weights(const ComponentArray& array) {
    if (array.n() > kMaxEnumerableComponents)
        throw std::invalid_argument("component count exceeds enumeration guard (26)");
    if (array.actual.size() != array.nominal.size())
        throw std::invalid_argument("actual weights not populated");
    for (double w : array.actual)
        if (!(w >= 0.0)) throw std::invalid_argument("negative actual weight");
}

}  // namespace

std::vector<double> reference_values(const ComponentArray& array) {
    check_weights(array);

    const std::size_t count = std::size_t{1} << array.n();
    const double denom = 1.0 + ascending_sum(array.actual);

    // Subset sums by reusing the sum without the highest set bit, so each
    // mask's value accumulates components in ascending index order.
    std::vector<double> values(count);
    values[0] = 0.0;
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        const std::uint32_t top = std::bit_floor(mask);
        values[mask] = values[mask ^ top] + array.actual[std::countr_zero(top)];
    }
    for (std::uint32_t mask = 0; mask < count; ++mask) values[mask] /= denom;
    return values;
}

ReferenceSet enumerate_references(const ComponentArray& array) {
    std::vector<double> values = reference_values(array);

    ReferenceSet refs;
    refs.n = array.n();
    refs.denom = 1.0 + ascending_sum(array.actual);
    refs.grouping = array.grouping;
    refs.trial = array.trial;
    refs.entries.resize(values.size());
    for (std::uint32_t mask = 0; mask < values.size(); ++mask)
        refs.entries[mask] = {values[mask], mask};

    std::sort(refs.entries.begin(), refs.entries.end(), [](const RefEntry& a, const RefEntry& b) {
        return a.value != b.value ? a.value < b.value : a.mask < b.mask;
    });
    return refs;
}

SelectedQuantizer select_quantizer_exhaustive(const ReferenceSet& refs, const TargetGrid& grid) {
    if (refs.entries.empty()) throw std::invalid_argument("empty reference set");
    if (grid.nk < 1 || grid.nk > 30) throw std::invalid_argument("nk out of range");

    const std::size_t codes = std::size_t{1} << grid.nk;
    const double scale = static_cast<double>(codes);
    const auto& entries = refs.entries;
    const std::size_t m = entries.size();

    SelectedQuantizer q;
    q.nk = grid.nk;
    q.n = refs.n;
    q.grouping = refs.grouping;
    q.trial = refs.trial;
    q.boundaries.resize(codes + 1);
    q.masks.resize(codes - 1);
    q.boundaries.front() = 0.0;
    q.boundaries.back() = 1.0;

    // Targets ascend, so the candidate pair walks forward once over the
    // sorted set. run_start tracks the first entry of j's equal-value run:
    // entries are (value, mask)-sorted, so it holds the smallest mask.
    std::size_t j = 0;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i < codes; ++i) {
        const double target = static_cast<double>(i) / scale;
        while (j + 1 < m && entries[j + 1].value <= target) {
            ++j;
            if (entries[j].value != entries[j - 1].value) run_start = j;
        }
        std::size_t pick;
        if (j + 1 < m) {
            const double left = target - entries[j].value;
            const double right = entries[j + 1].value - target;
            pick = (left <= right) ? run_start : j + 1;  // tie: smaller value, then mask
        } else {
            pick = run_start;
        }
        q.boundaries[i] = entries[pick].value;
        q.masks[i - 1] = entries[pick].mask;
    }
    return q;
}

SelectedQuantizer select_quantizer_greedy(const ComponentArray& array, const TargetGrid& grid) {
    check_weights(array);
    if (grid.nk < 1 || grid.nk > 30) throw std::invalid_argument("nk out of range");

    const int n = array.n();
    const double denom = 1.0 + ascending_sum(array.actual);
    const std::size_t codes = std::size_t{1} << grid.nk;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return array.actual[a] != array.actual[b] ? array.actual[a] > array.actual[b] : a < b;
    });

    SelectedQuantizer q;
    q.nk = grid.nk;
    q.n = n;
    q.grouping = array.grouping;
    q.trial = array.trial;
    q.boundaries.resize(codes + 1);
    q.masks.resize(codes - 1);
    q.boundaries.front() = 0.0;
    q.boundaries.back() = 1.0;

    for (std::size_t i = 1; i < codes; ++i) {
        const double target_num = static_cast<double>(i) / static_cast<double>(codes) * denom;
        double acc = 0.0;
        std::uint32_t mask = 0;
        for (int idx : order) {
            const double w = array.actual[idx];
            if (acc + w <= target_num) {
                acc += w;
                mask |= 1u << idx;
            }
        }
        q.boundaries[i] = decode_assembly(mask, array);
        q.masks[i - 1] = mask;
    }

    // Greedy is not monotone in the target; carry the previous pair forward
    // over inversions so boundary/mask stay a valid round-trip.
    for (std::size_t i = 2; i < codes; ++i) {
        if (q.boundaries[i] < q.boundaries[i - 1]) {
            q.boundaries[i] = q.boundaries[i - 1];
            q.masks[i - 1] = q.masks[i - 2];
        }
    }
    return q;
}

double decode_assembly(std::uint32_t mask, const ComponentArray& array) {
    const int n = array.n();
    if (n < 32 && mask >= (1u << n)) throw std::invalid_argument("mask out of range");
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) acc += array.actual[i];
    return acc / (1.0 + ascending_sum(array.actual));
}

std::uint32_t quantize(double x, const SelectedQuantizer& q) {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("input outside [0, 1)");
    auto it = std::upper_bound(q.boundaries.begin(), q.boundaries.end(), x);
    return static_cast<std::uint32_t>(std::distance(q.boundaries.begin(), it)) - 1u;
}

}  // namespace srq
