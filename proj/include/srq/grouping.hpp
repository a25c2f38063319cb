#pragma once

#include <cstdint>
#include <vector>

#include "srq/model.hpp"

namespace srq {

// Component-array constructors. Each fixes a canonical component order (the
// emitted order below); all of them partition 2^n0 - 1 unit cells, so the
// nominal weights always sum to 2^n0 - 1.

// Conventional binary-weighted array: {2^0, 2^1, ..., 2^(n0-1)}, ascending.
ComponentArray build_binary_weighted(int n0);

// General redundant family with parameters (s, n0prime),
// 1 <= n0prime < n0 and 1 <= s <= n0 - n0prime. Two sub-arrays:
//   sub[i]  = 2^(n0 - n0prime + i - s)                   i in [0, n0prime-1]
//   base[j] = 2^j                    if j <  n0 - n0prime
//           = 2^j - sub[j-n0+n0prime] otherwise           j in [0, n0-1]
// Order: base by j, then sub by i.
ComponentArray build_rs_family(int n0, int s, int n0prime);

// Half-split array (the s=1, n0prime=n0-1 member of the family):
// {2^0..2^(n0-2)} u {1} u {2^0..2^(n0-2)}, n = 2*n0 - 1.
// Order: first sub-array sorted ascending (the extra 1 leads), then second.
ComponentArray build_half_split(int n0);

// Uniform-coverage array: a base array plus sub-arrays of halving resolution
// N_i = ceil(N_{i-1}/2), i = 1..floor(log2 n0), N_0 = n0.
//   sub_i[j] = 2^j                                        j in [0, N_i - 1]
//   base[l]  = 2^l                   if l < n0 - N_1
//            = 2^l - sum_m 2^(l - n0 + N_m)  otherwise    l in [0, n0-1]
// Correction terms with negative exponent are dropped (the unique reading
// that keeps every weight a positive integer).
// Order: base by l, then sub-arrays i = 1, 2, ... each by j.
ComponentArray build_uniform(int n0);

// Validated entry point for user-supplied weights: positive integers summing
// to 2^n0 - 1, kept in the given order.
ComponentArray build_raw(int n0, std::vector<std::uint32_t> weights);

}  // namespace srq
