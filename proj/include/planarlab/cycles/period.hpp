#pragma once

// Period function of a center: T(s) over a section rooted at the center,
// restricted to orbits that actually close, and the count of critical
// periods at a stated resolution (sign changes of a finite-difference T',
// sharpened by local grid refinement).

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "planarlab/cycles/section.hpp"

namespace planarlab {

// Failed return or a returning orbit that does not close: closure_gap holds
// |Pi(s) - s| in the latter case, NaN in the former.
struct PeriodExclusion {
    double s = 0;
    ReturnStatus status = ReturnStatus::NoReturn;
    double closure_gap = std::numeric_limits<double>::quiet_NaN();
};

struct PeriodScanResult {
    std::vector<ReturnSample> samples;  // closing orbits only
    std::vector<PeriodExclusion> excluded;
};

struct PeriodScanOptions {
    ReturnOptions ret;
    double closure_tol = 1e-8;  // |Pi(s) - s| below this counts as closed
};

inline PeriodScanResult period_scan(const VectorField2& vf, const Section& sec,
                                    const std::vector<double>& s_grid,
                                    const PeriodScanOptions& opts = {}) {
    PeriodScanResult out;
    for (double s : s_grid) {
        ReturnResult res = return_map(vf, sec, s, opts.ret);
        if (res.status != ReturnStatus::Ok) {
            out.excluded.push_back({s, res.status, std::numeric_limits<double>::quiet_NaN()});
            continue;
        }
        if (std::fabs(res.sample.pi - s) > opts.closure_tol) {
            out.excluded.push_back({s, ReturnStatus::Ok, std::fabs(res.sample.pi - s)});
            continue;
        }
        out.samples.push_back(res.sample);
    }
    return out;
}

struct CriticalPeriod {
    double s = 0;        // bracket midpoint after refinement
    double width = 0;    // final bracket width
};

struct CriticalPeriodReport {
    int count = 0;
    std::vector<CriticalPeriod> locations;
    std::vector<int> counts_per_round;  // refinement trace
};

namespace detail {

// Sign changes of the centered finite-difference derivative of T over the
// (s, T) samples; returns bracketing sample indices.
inline std::vector<std::size_t> tprime_sign_changes(const std::vector<double>& s,
                                                    const std::vector<double>& T) {
    std::vector<double> d(s.size(), 0.0);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) d[i] = (T[i + 1] - T[i - 1]) / (s[i + 1] - s[i - 1]);
    if (s.size() >= 2) {
        d[0] = (T[1] - T[0]) / (s[1] - s[0]);
        d[s.size() - 1] = (T[s.size() - 1] - T[s.size() - 2]) / (s[s.size() - 1] - s[s.size() - 2]);
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if ((d[i] < 0 && d[i + 1] > 0) || (d[i] > 0 && d[i + 1] < 0)) idx.push_back(i);
    }
    return idx;
}

}  // namespace detail

// Count from a fixed sample set (no refinement); needs >= 8 samples.
inline CriticalPeriodReport critical_periods(const std::vector<ReturnSample>& samples) {
    if (samples.size() < 8) throw std::domain_error("critical_periods: need at least 8 samples");
    std::vector<double> s, T;
    for (auto& smp : samples) {
        s.push_back(smp.r);
        T.push_back(smp.T);
    }
    CriticalPeriodReport rep;
    auto idx = detail::tprime_sign_changes(s, T);
    rep.count = static_cast<int>(idx.size());
    for (auto i : idx) rep.locations.push_back({0.5 * (s[i] + s[i + 1]), s[i + 1] - s[i]});
    rep.counts_per_round.push_back(rep.count);
    return rep;
}

// Count with local refinement: 3 rounds, shrinking each bracket around a
// sign change by a factor 4 grid, resolving locations toward 1e-6 in s.
// `period_at` must return the period of the closed orbit through s (NaN
// for non-closing s, which aborts that bracket).
inline CriticalPeriodReport critical_periods(const std::function<double(double)>& period_at,
                                             const std::vector<double>& s_grid) {
    if (s_grid.size() < 8) throw std::domain_error("critical_periods: need at least 8 samples");
    std::vector<double> s = s_grid, T;
    for (double v : s) T.push_back(period_at(v));

    CriticalPeriodReport rep;
    auto idx = detail::tprime_sign_changes(s, T);
    rep.counts_per_round.push_back(static_cast<int>(idx.size()));

    for (auto i : idx) {
        double lo = s[i > 0 ? i - 1 : i], hi = s[std::min(i + 2, s.size() - 1)];
        bool ok = true;
        int local_count = 1;
        for (int round = 0; round < 3 && ok; ++round) {
            // 9-point local grid (factor-4 refinement of the 2-cell bracket)
            std::vector<double> ls, lT;
            for (int j = 0; j <= 8; ++j) {
                const double sv = lo + (hi - lo) * j / 8.0;
                const double tv = period_at(sv);
                if (!std::isfinite(tv)) {
                    ok = false;
                    break;
                }
                ls.push_back(sv);
                lT.push_back(tv);
            }
            if (!ok) break;
            auto lidx = detail::tprime_sign_changes(ls, lT);
            local_count = static_cast<int>(lidx.size());
            if (lidx.empty()) {
                ok = false;  // sign change did not survive refinement
                break;
            }
            const std::size_t m = lidx[0];
            lo = ls[m > 0 ? m - 1 : m];
            hi = ls[std::min(m + 2, ls.size() - 1)];
        }
        if (ok && local_count >= 1) {
            rep.locations.push_back({0.5 * (lo + hi), hi - lo});
            ++rep.count;
            rep.counts_per_round.push_back(local_count);
        }
    }
    return rep;
}

// Convenience wrapper: periods via return maps on the section, non-closing
// orbits mapped to NaN.
inline CriticalPeriodReport critical_periods(const VectorField2& vf, const Section& sec,
                                             const std::vector<double>& s_grid,
                                             const PeriodScanOptions& opts = {}) {
    auto period_at = [&](double s) {
        ReturnResult res = return_map(vf, sec, s, opts.ret);
        if (res.status != ReturnStatus::Ok || std::fabs(res.sample.pi - s) > opts.closure_tol) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return res.sample.T;
    };
    return critical_periods(period_at, s_grid);
}

}  // namespace planarlab
