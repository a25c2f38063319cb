#pragma once

#include <cstdint>
#include <vector>

#include "srq/reference.hpp"

namespace srq {

// Entropy/error report for one quantizer evaluated over the centered delta
// fraction of codes. m_total is the normalized total mean-square error,
// h = -log2(sqrt(12 * m_total)) in bits. rmse_per_code[i] is
// sqrt(M(code_begin + i)).
struct EntropyReport {
    int nk = 0;
    double delta = 1.0;
    double m_total = 0.0;
    double h = 0.0;
    std::uint32_t code_begin = 0;
    std::vector<double> rmse_per_code;
};

// Per-code squared error is the closed-form integral
//   ((b - mid)^3 - (a - mid)^3) / 3,  mid = (d + 0.5) / 2^nk
// over bin [a, b]. For delta = 1 the code range is 0 .. 2^nk - 1; for
// delta < 1 it is floor((1-delta)/2 * 2^nk) .. floor((1-(1-delta)/2) * 2^nk),
// with the upper index clamped to 2^nk - 1 so delta = 1 reduces exactly to
// the full-range sum. Terms are reduced with compensated summation.
EntropyReport entropy_report(const SelectedQuantizer& q, double delta);

// Maximum achievable entropy over a centered delta range: nk + log2(delta).
double shannon_limit(int nk, double delta);

// Full-range per-code RMSE, (code, rmse) pairs.
std::vector<std::pair<std::uint32_t, double>> rmse_profile(const SelectedQuantizer& q);

}  // namespace srq
