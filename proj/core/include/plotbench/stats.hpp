#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plotbench {

// Upper-tail probability of the chi-square distribution with k dof.
double chi2_sf(double x, double k);

// Standard normal survival function and quantile function.
double normal_sf(double z);
double normal_ppf(double p);

// Average ranks (1-based) with ties sharing their average rank.
std::vector<double> average_ranks(const std::vector<double>& values);

struct KruskalResult {
    double h = 0.0;
    double p = 1.0;
};

// Rank-based H with tie correction; p from the chi-square approximation with
// k-1 dof. All-identical pooled values give H = 0, p = 1.
KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct MannWhitneyResult {
    double u = 0.0;  // U statistic of the first sample
    double p = 1.0;  // two-sided
};

// Average-rank tie handling. Exact enumeration over all rank splits when both
// samples have <= 8 values, otherwise the normal approximation with tie and
// continuity corrections.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

// p_i' = min(1, m * p_i)
std::vector<double> bonferroni(const std::vector<double>& pvals, int m);

// Compact letter display via insert-and-absorb: groups share a letter iff not
// significantly different. significant[i][j] must be symmetric. Deterministic
// given group order.
std::vector<std::string> letter_display(const std::vector<std::vector<bool>>& significant);

struct BootstrapCI {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Bias-corrected percentile bootstrap of the sample mean; seeded, B resamples.
// Degenerate inputs (single value or zero spread) collapse to a point interval.
BootstrapCI bootstrap_mean_ci(const std::vector<double>& xs, std::uint64_t seed, int b = 2000,
                              double confidence = 0.95);

}  // namespace plotbench
