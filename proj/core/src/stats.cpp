#include "plotbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "plotbench/rng.hpp"

namespace plotbench {

namespace {

// regularized incomplete gamma, series and continued-fraction forms
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// tie term sum(t^3 - t) over tie groups of the pooled sample
double tie_term(const std::vector<double>& pooled) {
    std::map<double, int> counts;
    for (double v : pooled) ++counts[v];
    double sum = 0.0;
    for (const auto& [value, t] : counts) {
        sum += static_cast<double>(t) * t * t - t;
    }
    return sum;
}

}  // namespace

double chi2_sf(double x, double k) {
    if (x <= 0.0) return 1.0;
    const double a = k / 2.0;
    const double half_x = x / 2.0;
    if (half_x < a + 1.0) return 1.0 - gamma_p_series(a, half_x);
    return gamma_q_contfrac(a, half_x);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_ppf(double p) {
    // Acklam's rational approximation, |relative error| < 1.15e-9
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("normal_ppf: p outside (0, 1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01,  -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double q = 0.0;
    double r = 0.0;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need >= 2 groups");
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    const double n = static_cast<double>(pooled.size());

    const bool all_same = std::all_of(pooled.begin(), pooled.end(),
                                      [&](double v) { return v == pooled.front(); });
    if (all_same) return {0.0, 1.0};

    const std::vector<double> ranks = average_ranks(pooled);
    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
        h += rank_sum * rank_sum / static_cast<double>(g.size());
        offset += g.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
    if (correction > 0.0) h /= correction;

    const double dof = static_cast<double>(groups.size()) - 1.0;
    return {h, chi2_sf(h, dof)};
}

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = average_ranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
    const double u = rank_sum_a - static_cast<double>(n1) * (n1 + 1) / 2.0;
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    MannWhitneyResult out;
    out.u = u;

    if (n1 <= 8 && n2 <= 8) {
        // exact enumeration over all C(n1+n2, n1) rank splits of the pooled sample
        const std::size_t n = n1 + n2;
        std::vector<std::size_t> idx(n1);
        std::iota(idx.begin(), idx.end(), 0);
        long long total = 0;
        long long count_le = 0;
        long long count_ge = 0;
        constexpr double kTol = 1e-9;
        while (true) {
            double rs = 0.0;
            for (std::size_t i : idx) rs += ranks[i];
            const double u_split = rs - static_cast<double>(n1) * (n1 + 1) / 2.0;
            ++total;
            if (u_split <= u + kTol) ++count_le;
            if (u_split >= u - kTol) ++count_ge;
            // next combination
            std::size_t k = n1;
            while (k > 0 && idx[k - 1] == n - n1 + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < n1; ++j) idx[j] = idx[j - 1] + 1;
        }
        const double p = 2.0 * static_cast<double>(std::min(count_le, count_ge)) /
                         static_cast<double>(total);
        out.p = std::min(1.0, p);
        return out;
    }

    const double n = static_cast<double>(n1 + n2);
    const double sigma2 = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                          ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
    if (sigma2 <= 0.0) {
        out.p = 1.0;
        return out;
    }
    double d = u - mu;
    if (d > 0.5) {
        d -= 0.5;  // continuity correction toward the mean
    } else if (d < -0.5) {
        d += 0.5;
    } else {
        d = 0.0;
    }
    const double z = d / std::sqrt(sigma2);
    out.p = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
    return out;
}

std::vector<double> bonferroni(const std::vector<double>& pvals, int m) {
    if (m < static_cast<int>(pvals.size())) {
        throw std::invalid_argument("bonferroni: m smaller than the number of p-values");
    }
    std::vector<double> out;
    out.reserve(pvals.size());
    for (double p : pvals) out.push_back(std::min(1.0, static_cast<double>(m) * p));
    return out;
}

std::vector<std::string> letter_display(const std::vector<std::vector<bool>>& significant) {
    const std::size_t n = significant.size();
    std::vector<std::vector<bool>> columns;  // columns[c][g]: group g carries letter c
    columns.emplace_back(n, true);

    auto is_subset = [&](const std::vector<bool>& x, const std::vector<bool>& y) {
        for (std::size_t g = 0; g < x.size(); ++g) {
            if (x[g] && !y[g]) return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!significant[i][j]) continue;
            std::vector<std::vector<bool>> next;
            for (const auto& col : columns) {
                if (col[i] && col[j]) {
                    // split the column that wrongly ties i and j together
                    std::vector<bool> without_j = col;
                    without_j[j] = false;
                    std::vector<bool> without_i = col;
                    without_i[i] = false;
                    next.push_back(std::move(without_j));
                    next.push_back(std::move(without_i));
                } else {
                    next.push_back(col);
                }
            }
            // absorb: drop any column contained in another
            std::vector<std::vector<bool>> kept;
            for (std::size_t c = 0; c < next.size(); ++c) {
                bool absorbed = false;
                for (std::size_t d = 0; d < next.size(); ++d) {
                    if (c == d) continue;
                    if (is_subset(next[c], next[d]) && (next[c] != next[d] || d < c)) {
                        absorbed = true;
                        break;
                    }
                }
                if (!absorbed) kept.push_back(next[c]);
            }
            columns = std::move(kept);
        }
    }

    std::vector<std::string> letters(n);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const char letter = static_cast<char>('a' + (c % 26));
        for (std::size_t g = 0; g < n; ++g) {
            if (columns[c][g]) letters[g].push_back(letter);
        }
    }
    return letters;
}

BootstrapCI bootstrap_mean_ci(const std::vector<double>& xs, std::uint64_t seed, int b,
                              double confidence) {
    if (xs.empty()) throw std::invalid_argument("bootstrap_mean_ci: empty sample");
    BootstrapCI out;
    out.mean = mean_of(xs);

    const bool degenerate = xs.size() == 1 ||
                            std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs.front(); });
    if (degenerate) {
        out.lo = out.hi = out.mean;
        return out;
    }

    Rng rng(seed);
    std::vector<double> boot(b);
    const std::size_t n = xs.size();
    for (int i = 0; i < b; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += xs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1))];
        }
        boot[i] = sum / static_cast<double>(n);
    }
    std::sort(boot.begin(), boot.end());
    if (boot.front() == boot.back()) {
        out.lo = out.hi = out.mean;
        return out;
    }

    // bias correction z0 from the fraction of resamples below the observed mean
    double below = 0.0;
    for (double v : boot) {
        if (v < out.mean) below += 1.0;
    }
    double prop = below / static_cast<double>(b);
    prop = std::clamp(prop, 1.0 / (b + 1.0), static_cast<double>(b) / (b + 1.0));
    const double z0 = normal_ppf(prop);

    const double alpha = 1.0 - confidence;
    const double z_lo = normal_ppf(alpha / 2.0);
    const double z_hi = normal_ppf(1.0 - alpha / 2.0);
    const double q_lo = 1.0 - normal_sf(2.0 * z0 + z_lo);
    const double q_hi = 1.0 - normal_sf(2.0 * z0 + z_hi);

    auto quantile = [&](double q) {
        const double pos = std::clamp(q, 0.0, 1.0) * (b - 1);
        const std::size_t lo_idx = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi_idx = std::min(static_cast<std::size_t>(lo_idx + 1),
                                            static_cast<std::size_t>(b - 1));
        const double frac = pos - static_cast<double>(lo_idx);
        return boot[lo_idx] * (1.0 - frac) + boot[hi_idx] * frac;
    };
    out.lo = quantile(q_lo);
    out.hi = quantile(q_hi);
    return out;
}

}  // namespace plotbench
