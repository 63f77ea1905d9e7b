#include "bekk/covariance.hpp"

#include "bekk/error.hpp"
#include "bekk/parallel.hpp"
#include "bekk/random.hpp"

#include <algorithm>
#include <cmath>

namespace bekk {

Matrix sample_cov(const PathSample& path) {
    if (path.T == 0) throw Error(ErrorCode::Domain, "sample covariance of an empty path");
    const std::size_t d = path.d;
    Matrix gamma(d, d);
    for (std::size_t t = 0; t < path.T; ++t) {
        const auto x = path.row(t);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c) gamma(r, c) += x[r] * x[c];
    }
    const double inv = 1.0 / static_cast<double>(path.T);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r; c < d; ++c) {
            gamma(r, c) *= inv;
            gamma(c, r) = gamma(r, c);
        }
    return gamma;
}

std::vector<CrossTailEntry> cross_tail_check(const PathSample& path, const TailProfile& profile, std::size_t k,
                                             double band) {
    if (profile.alpha.size() != path.d) throw Error(ErrorCode::DimensionMismatch, "profile and path dimensions differ");
    std::vector<CrossTailEntry> out;
    std::vector<double> product(path.T);
    for (std::size_t i = 0; i < path.d; ++i)
        for (std::size_t j = i; j < path.d; ++j) {
            for (std::size_t t = 0; t < path.T; ++t) product[t] = path.at(t, i) * path.at(t, j);
            CrossTailEntry e;
            e.i = i;
            e.j = j;
            e.k = k;
            e.predicted = alpha_cross(profile.alpha[i], profile.alpha[j]);
            e.empirical = hill_abs(product, k);
            e.within_band = std::abs(e.empirical - e.predicted) <= band;
            out.push_back(e);
        }
    return out;
}

double predicted_fluctuation_slope(double alpha_ij) {
    if (!(alpha_ij > 0.0)) throw Error(ErrorCode::Domain, "tail index must be positive");
    return std::max(0.5, 1.0 / alpha_ij) - 1.0;
}

namespace {

// Linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

FluctuationScan fluctuation_scan(const ModelSpec& spec, const TailProfile& profile,
                                 const std::vector<std::size_t>& n_grid, std::size_t reps, std::uint64_t seed,
                                 std::size_t burnin) {
    if (n_grid.size() < 2) throw Error(ErrorCode::Domain, "fluctuation regression needs at least two sample sizes");
    for (std::size_t n : n_grid)
        if (n < 1000) throw Error(ErrorCode::Domain, "fluctuation sample sizes must be >= 1000");
    if (reps < 50) throw Error(ErrorCode::Domain, "fluctuation scan needs reps >= 50");
    if (profile.alpha.size() != spec.d) throw Error(ErrorCode::DimensionMismatch, "profile and spec dimensions differ");

    const std::size_t d = spec.d;
    const std::size_t pairs = d * (d + 1) / 2;
    const std::size_t jobs = n_grid.size() * reps;
    // entries[job][pair]
    std::vector<std::vector<double>> entries(jobs);
    parallel_for(jobs, [&](std::size_t job) {
        const std::size_t n = n_grid[job / reps];
        const PathSample path = simulate_sre(spec, n, burnin, mix64(seed) ^ mix64(job + 1));
        if (path.diverged) throw Error(ErrorCode::Numerical, "path diverged during fluctuation scan");
        const Matrix gamma = sample_cov(path);
        auto& row = entries[job];
        row.reserve(pairs);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) row.push_back(gamma(i, j));
    });

    FluctuationScan scan;
    std::size_t pair = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j, ++pair) {
            std::vector<double> log_n, log_iqr;
            for (std::size_t g = 0; g < n_grid.size(); ++g) {
                std::vector<double> values(reps);
                for (std::size_t r = 0; r < reps; ++r) values[r] = entries[g * reps + r][pair];
                std::sort(values.begin(), values.end());
                const double iqr = quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
                if (!(iqr > 0.0)) throw Error(ErrorCode::Degenerate, "replicates have zero spread");
                scan.points.push_back({n_grid[g], i, j, iqr});
                log_n.push_back(std::log(static_cast<double>(n_grid[g])));
                log_iqr.push_back(std::log(iqr));
            }
            const double m = static_cast<double>(log_n.size());
            double mx = 0.0, my = 0.0;
            for (std::size_t g = 0; g < log_n.size(); ++g) {
                mx += log_n[g];
                my += log_iqr[g];
            }
            mx /= m;
            my /= m;
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t g = 0; g < log_n.size(); ++g) {
                sxy += (log_n[g] - mx) * (log_iqr[g] - my);
                sxx += (log_n[g] - mx) * (log_n[g] - mx);
            }
            if (!(sxx > 0.0)) throw Error(ErrorCode::Degenerate, "sample sizes must be distinct");
            FluctuationExponent e;
            e.i = i;
            e.j = j;
            e.alpha_cross = alpha_cross(profile.alpha[i], profile.alpha[j]);
            e.slope = sxy / sxx;
            e.predicted_slope = predicted_fluctuation_slope(e.alpha_cross);
            scan.exponents.push_back(e);
        }
    return scan;
}

}  // namespace bekk
