#include "tcdkit/montecarlo.hpp"

#include "tcdkit/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace tcd::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Sums per-run event counts over [0, runs), split across threads in
// contiguous chunks. Counts are integers, so the total is independent of the
// partitioning.
template <std::size_t N, typename PerRun>
std::array<std::int64_t, N> accumulate_counts(std::int64_t runs, int threads, PerRun per_run) {
    const int t = std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(runs, 1));
    std::vector<std::array<std::int64_t, N>> partial(static_cast<std::size_t>(t));
    std::vector<std::thread> workers;
    const std::int64_t chunk = (runs + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(runs, lo + chunk);
        workers.emplace_back([&, w, lo, hi] {
            std::array<std::int64_t, N> acc{};
            for (std::int64_t r = lo; r < hi; ++r) {
                const std::array<bool, N> ev = per_run(r);
                for (std::size_t i = 0; i < N; ++i) acc[i] += ev[i] ? 1 : 0;
            }
            partial[static_cast<std::size_t>(w)] = acc;
        });
    }
    for (auto& th : workers) th.join();
    std::array<std::int64_t, N> total{};
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < N; ++i) total[i] += p[i];
    }
    return total;
}

double binom_stderr(double p, std::int64_t n) {
    return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

bool windowed(DetectorKind kind) { return kind == DetectorKind::fma || kind == DetectorKind::wlc; }

} // namespace

// The origin is scrambled through the output mix so that neighbouring
// streams do not overlap the same +gamma orbit.
Rng::Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix64(seed + stream * kGolden)) {}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian(double mu, double sigma) { return mu + sigma * stats::norm_quantile(uniform01()); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) { return mix64(seed + salt * kGolden); }

SimEstimate simulate_pfa(const SimScenario& s) {
    if (s.runs < 1) throw std::invalid_argument("simulate_pfa: runs must be >= 1");
    const GaussianSpec pre = s.model.pre();
    const double sigma = std::sqrt(pre.sigma2);
    const LlrCoeffs co = llr_coeffs(s.model);
    const std::int64_t length = windowed(s.kind) ? s.m + s.m_alpha - 1 : s.m_alpha;

    const auto counts = accumulate_counts<1>(s.runs, s.threads, [&](std::int64_t r) -> std::array<bool, 1> {
        Rng rng(s.seed, static_cast<std::uint64_t>(r));
        Detector det(s.kind, s.m, s.h);
        for (std::int64_t i = 0; i < length; ++i) {
            if (det.step(co.eval(rng.gaussian(pre.mu, sigma)))) return {true};
        }
        return {false};
    });
    const double p = static_cast<double>(counts[0]) / static_cast<double>(s.runs);
    return {p, binom_stderr(p, s.runs), s.runs, s.seed};
}

SimEstimate simulate_pmd(const SimScenario& s) {
    if (s.runs < 1) throw std::invalid_argument("simulate_pmd: runs must be >= 1");
    std::vector<std::int64_t> onsets = s.v_sweep;
    if (onsets.empty()) onsets.push_back(s.m + 1);
    for (std::int64_t v : onsets) {
        if (v <= s.m) {
            throw std::invalid_argument("simulate_pmd: change onset v must be > m (windowed analysis)");
        }
    }

    const GaussianSpec pre = s.model.pre();
    const GaussianSpec post = s.model.actual();
    const double sigma0 = std::sqrt(pre.sigma2);
    const double sigma1 = std::sqrt(post.sigma2);
    const LlrCoeffs co = llr_coeffs(s.model);

    SimEstimate worst;
    bool have = false;
    for (std::int64_t v : onsets) {
        const std::int64_t length = v + s.m - 1;
        // per run: [0] survived to v (T >= v), [1] missed (T >= v + m)
        const auto counts = accumulate_counts<2>(s.runs, s.threads, [&](std::int64_t r) -> std::array<bool, 2> {
            Rng rng(s.seed, static_cast<std::uint64_t>(r));
            Detector det(s.kind, s.m, s.h);
            std::int64_t alarm_at = 0; // 0 = no alarm within the run
            for (std::int64_t i = 1; i <= length; ++i) {
                const double x = i < v ? rng.gaussian(pre.mu, sigma0) : rng.gaussian(post.mu, sigma1);
                if (auto a = det.step(co.eval(x))) {
                    alarm_at = a->stop_index;
                    break;
                }
            }
            const bool survived = alarm_at == 0 || alarm_at >= v;
            const bool missed = alarm_at == 0; // run length is v + m - 1
            return {survived, missed};
        });
        if (counts[0] == 0) {
            throw std::runtime_error("simulate_pmd: conditional undefined, all " + std::to_string(s.runs) +
                                     " runs alarmed before v=" + std::to_string(v));
        }
        const double p = static_cast<double>(counts[1]) / static_cast<double>(counts[0]);
        if (!have || p > worst.p_hat) {
            worst = {p, binom_stderr(p, counts[0]), counts[0], s.seed};
            have = true;
        }
    }
    return worst;
}

std::vector<RocPoint> simulate_roc(const ChangeModel& model, DetectorKind kind,
                                   const std::vector<Probability>& alpha_grid, const TcdConfig& config,
                                   std::int64_t runs, std::uint64_t seed, ThresholdRule rule, int threads) {
    std::vector<Probability> grid = alpha_grid;
    std::sort(grid.begin(), grid.end(),
              [](const Probability& a, const Probability& b) { return a.value() < b.value(); });

    std::vector<RocPoint> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        TcdConfig point = config;
        point.alpha_tilde = grid[i];
        RocPoint row;
        row.alpha_target = grid[i].value();
        row.h = detector_threshold(model, kind, point, rule);
        // FMA has the window-sum bound; CUSUM/WLC/Shewhart carry the
        // literature bound m_alpha e^{-h}.
        row.pfa_bound = kind == DetectorKind::fma
                            ? pfa_bound(model, row.h, config.m, config.m_alpha).value()
                            : std::min(1.0, config.m_alpha * std::exp(-row.h));
        row.pmd_bound = pmd_bound(model, row.h, config.m).value();

        SimScenario scn(model);
        scn.kind = kind;
        scn.h = row.h;
        scn.m = config.m;
        scn.m_alpha = config.m_alpha;
        scn.runs = runs;
        scn.threads = threads;
        scn.seed = derive_seed(seed, 2 * i);
        row.pfa = simulate_pfa(scn);
        scn.seed = derive_seed(seed, 2 * i + 1);
        row.pmd = simulate_pmd(scn);
        rows.push_back(row);
    }
    return rows;
}

std::pair<SimEstimate, SimEstimate> check_association(const ChangeModel& model, double h, int n_windows,
                                                      int m, std::int64_t runs, std::uint64_t seed,
                                                      int threads) {
    if (n_windows < 1) throw std::invalid_argument("check_association: N must be >= 1");
    if (m < 1) throw std::invalid_argument("check_association: m must be >= 1");
    if (runs < 1) throw std::invalid_argument("check_association: runs must be >= 1");
    const GaussianSpec pre = model.pre();
    const double sigma = std::sqrt(pre.sigma2);
    const LlrCoeffs co = llr_coeffs(model);

    // lhs: all of S_m .. S_{m+N-1} stay below h within one stream.
    const std::uint64_t lhs_seed = derive_seed(seed, 0);
    const auto lhs_counts =
        accumulate_counts<1>(runs, threads, [&](std::int64_t r) -> std::array<bool, 1> {
            Rng rng(lhs_seed, static_cast<std::uint64_t>(r));
            std::vector<double> llrs(static_cast<std::size_t>(m + n_windows - 1));
            for (auto& y : llrs) y = co.eval(rng.gaussian(pre.mu, sigma));
            double sum = 0.0;
            for (int i = 0; i < m; ++i) sum += llrs[static_cast<std::size_t>(i)];
            if (sum >= h) return {false};
            for (int i = m; i < m + n_windows - 1; ++i) {
                sum += llrs[static_cast<std::size_t>(i)] - llrs[static_cast<std::size_t>(i - m)];
                if (sum >= h) return {false};
            }
            return {true};
        });
    const double lhs_p = static_cast<double>(lhs_counts[0]) / static_cast<double>(runs);
    SimEstimate lhs{lhs_p, binom_stderr(lhs_p, runs), runs, lhs_seed};

    // rhs: [P(S_m < h)]^N from an independent substream.
    const std::uint64_t rhs_seed = derive_seed(seed, 1);
    const auto rhs_counts =
        accumulate_counts<1>(runs, threads, [&](std::int64_t r) -> std::array<bool, 1> {
            Rng rng(rhs_seed, static_cast<std::uint64_t>(r));
            double sum = 0.0;
            for (int i = 0; i < m; ++i) sum += co.eval(rng.gaussian(pre.mu, sigma));
            return {sum < h};
        });
    const double q = static_cast<double>(rhs_counts[0]) / static_cast<double>(runs);
    const double rhs_p = std::pow(q, n_windows);
    const double rhs_se =
        n_windows * std::pow(q, n_windows > 0 ? n_windows - 1 : 0) * binom_stderr(q, runs);
    SimEstimate rhs{rhs_p, rhs_se, runs, rhs_seed};
    return {lhs, rhs};
}

} // namespace tcd::mc
