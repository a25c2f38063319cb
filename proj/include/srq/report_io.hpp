#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "srq/metrics.hpp"
#include "srq/montecarlo.hpp"

namespace srq {

enum class ReportFormat { Csv, Json };

// Shortest round-trip decimal form of a double ("0.1", not "0.10000000...").
std::string format_double(double value);

// CSV columns: grouping,sigma_m,nk,delta,trials,mean_h,std_h
void write_sweep_csv(const McSummary& summary, std::ostream& out);
// CSV columns: bin_left,bin_right,density
void write_diffusion_csv(const DiffusionHistogram& hist, std::ostream& out);
// CSV columns: code,rmse
void write_rmse_csv(const std::vector<std::pair<std::uint32_t, double>>& profile,
                    std::ostream& out);

// JSON mirrors: arrays of records with the same field names.
void write_sweep_json(const McSummary& summary, std::ostream& out);
void write_diffusion_json(const DiffusionHistogram& hist, std::ostream& out);
void write_rmse_json(const std::vector<std::pair<std::uint32_t, double>>& profile,
                     std::ostream& out);

}  // namespace srq
