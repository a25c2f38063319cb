#include "srq/grouping.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace srq {

namespace {

ComponentArray finish(QuantizerSpec spec, Grouping grouping, std::vector<std::uint32_t> nominal) {
    std::uint64_t total = 0;
    for (std::uint32_t w : nominal) {
        if (w == 0) throw std::invalid_argument("grouping produced a non-positive weight");
        total += w;
    }
    if (total != spec.unit_count)
        throw std::invalid_argument("grouping weights do not sum to 2^n0 - 1");

    ComponentArray array;
    array.spec = spec;
    array.grouping = grouping;
    array.actual.assign(nominal.begin(), nominal.end());
    array.nominal = std::move(nominal);
    return array;
}

}  // namespace

ComponentArray build_binary_weighted(int n0) {
    auto spec = QuantizerSpec::make(n0);
    std::vector<std::uint32_t> nominal(n0);
    for (int j = 0; j < n0; ++j) nominal[j] = 1u << j;
    return finish(spec, Grouping::bw(), std::move(nominal));
}

ComponentArray build_rs_family(int n0, int s, int n0prime) {
    auto spec = QuantizerSpec::make(n0);
    if (n0prime < 1 || n0prime >= n0)
        throw std::invalid_argument("rs family: need 1 <= n0prime < n0");
    if (s < 1 || s > n0 - n0prime)
        throw std::invalid_argument("rs family: need 1 <= s <= n0 - n0prime");

    std::vector<std::uint32_t> sub(n0prime);
    for (int i = 0; i < n0prime; ++i) {
        int e = n0 - n0prime + i - s;
        if (e < 0) throw std::invalid_argument("rs family: negative weight exponent");
        sub[i] = 1u << e;
    }

    std::vector<std::uint32_t> nominal;
    nominal.reserve(static_cast<std::size_t>(n0) + n0prime);
    for (int j = 0; j < n0; ++j) {
        if (j < n0 - n0prime) {
            nominal.push_back(1u << j);
        } else {
            std::uint32_t c = 1u << j;
            std::uint32_t correction = sub[j - n0 + n0prime];
            if (correction >= c) throw std::invalid_argument("rs family: non-positive base weight");
            nominal.push_back(c - correction);
        }
    }
    nominal.insert(nominal.end(), sub.begin(), sub.end());
    return finish(spec, Grouping::rs(s, n0prime), std::move(nominal));
}

ComponentArray build_half_split(int n0) {
    auto spec = QuantizerSpec::make(n0);
    if (n0 < 2) throw std::invalid_argument("half-split: need n0 >= 2");

    std::vector<std::uint32_t> nominal;
    nominal.reserve(2 * n0 - 1);
    // First sub-array {2^0..2^(n0-2)} u {1}, ascending: the duplicate 1 leads.
    nominal.push_back(1);
    for (int j = 0; j <= n0 - 2; ++j) nominal.push_back(1u << j);
    for (int j = 0; j <= n0 - 2; ++j) nominal.push_back(1u << j);
    return finish(spec, Grouping::hs(), std::move(nominal));
}

ComponentArray build_uniform(int n0) {
    auto spec = QuantizerSpec::make(n0);
    if (n0 < 2) throw std::invalid_argument("uniform: need n0 >= 2");

    int levels = 0;
    while ((1 << (levels + 1)) <= n0) ++levels;  // floor(log2 n0)

    std::vector<int> res(levels + 1);
    res[0] = n0;
    for (int i = 1; i <= levels; ++i) res[i] = (res[i - 1] + 1) / 2;

    std::vector<std::uint32_t> nominal;
    for (int l = 0; l < n0; ++l) {
        if (l < n0 - res[1]) {
            nominal.push_back(1u << l);
        } else {
            std::int64_t c = std::int64_t{1} << l;
            for (int m = 1; m <= levels; ++m) {
                int e = l - n0 + res[m];
                if (e >= 0) c -= std::int64_t{1} << e;  // negative exponents dropped
            }
            if (c <= 0) throw std::invalid_argument("uniform: non-positive base weight");
            nominal.push_back(static_cast<std::uint32_t>(c));
        }
    }
    for (int i = 1; i <= levels; ++i)
        for (int j = 0; j < res[i]; ++j) nominal.push_back(1u << j);
    return finish(spec, Grouping::un(), std::move(nominal));
}

ComponentArray build_raw(int n0, std::vector<std::uint32_t> weights) {
    auto spec = QuantizerSpec::make(n0);
    if (weights.empty()) throw std::invalid_argument("raw grouping: empty weight list");
    return finish(spec, Grouping::raw(), std::move(weights));
}

}  // namespace srq
