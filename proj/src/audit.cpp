#include "spurion/audit.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace spurion {

namespace {

bool passes_i1_screen(const TimeSeries& s, double level) {
    const auto sm = adf_test(s, DeterministicSpec::SingleMean, 1);
    const auto tr = adf_test(s, DeterministicSpec::Trend, 1);
    return sm.p_value >= level && tr.p_value >= level;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) on a fixed worker pool; results land in a
// preallocated slot per index, so the aggregate is independent of scheduling.
template <typename Fn>
void parallel_for_index(std::int64_t n, int threads, Fn fn) {
    const int nw = std::min<std::int64_t>(resolve_threads(threads), n);
    if (nw <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

WilsonInterval wilson_ci95(std::int64_t successes, std::int64_t trials) {
    if (trials <= 0) throw_usage("wilson_ci95: trials must be >= 1");
    const double z = 1.959963984540054;  // Phi^-1(0.975)
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

AuditReport spurious_audit(const TimeSeries& target, const RandomWalkSpec& walk,
                           std::int64_t n_trials, const VecmSpec& test, double level,
                           std::uint64_t master_seed, bool override_target_screen, int threads) {
    if (n_trials < 1) throw_usage("spurious_audit: n_trials must be >= 1");

    AuditReport rep;
    rep.target_label = target.label;
    rep.n_trials = n_trials;
    rep.walk = walk;
    rep.walk.T = target.values.size();
    rep.test = test;
    rep.level = level;
    rep.master_seed = master_seed;
    rep.target_screen_overridden = override_target_screen;

    if (!override_target_screen && !passes_i1_screen(target, level))
        throw_refusal("spurious_audit: target '" + target.label +
                      "' fails the I(1) screen; pass the override flag to proceed anyway");

    rep.per_trial.resize(static_cast<std::size_t>(n_trials));
    std::vector<std::int64_t> resamples(static_cast<std::size_t>(n_trials), 0);

    parallel_for_index(n_trials, threads, [&](std::int64_t i) {
        const std::uint64_t sub_master = derive_trial_seed(master_seed, static_cast<std::uint64_t>(i));
        RandomWalkSpec w = rep.walk;
        TimeSeries partner;
        std::int64_t attempt = 0;
        for (;; ++attempt) {
            w.seed = derive_trial_seed(sub_master, static_cast<std::uint64_t>(attempt));
            partner = generate_random_walk(w, target.start_index, "trial_walk");
            if (passes_i1_screen(partner, level)) break;
            if (attempt > 1000)
                throw_numeric("spurious_audit: walk resampling did not converge");
        }
        resamples[static_cast<std::size_t>(i)] = attempt;

        const auto res = johansen_trace_test({target, partner}, test, level,
                                             I1Screen::AssertedByCaller);
        TrialRecord& rec = rep.per_trial[static_cast<std::size_t>(i)];
        rec.seed = w.seed;
        rec.trace = res.trace_stats[0];
        rec.p = res.p_values[0];
        rec.rejected = res.p_values[0] < level;
    });

    for (std::int64_t i = 0; i < n_trials; ++i) {
        rep.screen_failures += resamples[static_cast<std::size_t>(i)];
        if (rep.per_trial[static_cast<std::size_t>(i)].rejected) ++rep.rejections;
    }
    rep.false_positive_rate = static_cast<double>(rep.rejections) / static_cast<double>(n_trials);
    rep.wilson95 = wilson_ci95(rep.rejections, n_trials);
    return rep;
}

AuditReport size_power_experiment(const ExperimentConfig& cfg, std::int64_t n_trials,
                                  std::uint64_t master_seed, int threads) {
    if (n_trials < 1) throw_usage("size_power_experiment: n_trials must be >= 1");
    if (cfg.T < 20) throw_usage("size_power_experiment: T must be >= 20");
    if (cfg.dgp == Dgp::StationaryAR || cfg.dgp == Dgp::CointegratedPair) {
        if (std::abs(cfg.phi) >= 1.0)
            throw_usage("size_power_experiment: |phi| must be < 1 for a stationary component");
    }

    AuditReport rep;
    rep.target_label = "size_power_experiment";
    rep.n_trials = n_trials;
    rep.walk = RandomWalkSpec{cfg.T, cfg.mu, cfg.sigma, 0.0, 0};
    rep.test = cfg.test;
    rep.level = cfg.level;
    rep.master_seed = master_seed;
    rep.per_trial.resize(static_cast<std::size_t>(n_trials));
    std::vector<std::int64_t> resamples(static_cast<std::size_t>(n_trials), 0);

    parallel_for_index(n_trials, threads, [&](std::int64_t i) {
        const std::uint64_t seed = derive_trial_seed(master_seed, static_cast<std::uint64_t>(i));
        TrialRecord& rec = rep.per_trial[static_cast<std::size_t>(i)];
        rec.seed = seed;
        switch (cfg.dgp) {
            case Dgp::IndependentWalks:
            case Dgp::DriftedWalks: {
                // Walks feed the trace test, whose contract wants inputs
                // that passed the I(1) screen; resample failures and count
                // them, the same policy the audit uses.
                RandomWalkSpec w{cfg.T, cfg.mu, cfg.sigma, 0.0, 0};
                auto screened_walk = [&](std::uint64_t sub, std::int64_t& attempts) {
                    for (std::int64_t a = 0;; ++a) {
                        w.seed = derive_trial_seed(sub, static_cast<std::uint64_t>(a));
                        TimeSeries s = generate_random_walk(w, 0, "walk");
                        if (passes_i1_screen(s, cfg.level)) return s;
                        ++attempts;
                        if (a > 1000)
                            throw_numeric("size_power_experiment: screen resampling stalled");
                    }
                };
                std::int64_t& attempts = resamples[static_cast<std::size_t>(i)];
                const TimeSeries a = screened_walk(derive_trial_seed(seed, 1), attempts);
                const TimeSeries b = screened_walk(derive_trial_seed(seed, 2), attempts);
                const auto res = johansen_trace_test({a, b}, cfg.test, cfg.level,
                                                     I1Screen::AssertedByCaller);
                rec.trace = res.trace_stats[0];
                rec.p = res.p_values[0];
                rec.rejected = rec.p < cfg.level;
                break;
            }
            case Dgp::CointegratedPair: {
                GaussianGenerator gen(seed);
                Eigen::VectorXd x(cfg.T), y(cfg.T);
                double u = 0.0;
                x[0] = 0.0;
                u = gen.next();
                y[0] = cfg.beta * x[0] + u;
                for (Eigen::Index t = 1; t < cfg.T; ++t) {
                    x[t] = x[t - 1] + cfg.sigma * gen.next();
                    u = cfg.phi * u + gen.next();
                    y[t] = cfg.beta * x[t] + u;
                }
                const TimeSeries sy = TimeSeries::make("y", 0, y);
                const TimeSeries sx = TimeSeries::make("x", 0, x);
                const auto res = johansen_trace_test({sy, sx}, cfg.test, cfg.level,
                                                     I1Screen::AssertedByCaller);
                rec.trace = res.trace_stats[0];
                rec.p = res.p_values[0];
                rec.rejected = res.selected_rank == 1;
                break;
            }
            case Dgp::StationaryAR: {
                GaussianGenerator gen(seed);
                Eigen::VectorXd y(cfg.T);
                y[0] = gen.next();
                for (Eigen::Index t = 1; t < cfg.T; ++t)
                    y[t] = cfg.phi * y[t - 1] + gen.next();
                const TimeSeries s = TimeSeries::make("ar", 0, y);
                const auto res = adf_test(s, cfg.adf_spec, cfg.adf_lags);
                rec.trace = res.tau_stat;
                rec.p = res.p_value;
                rec.rejected = rec.p < cfg.level;
                break;
            }
        }
    });

    for (std::int64_t i = 0; i < n_trials; ++i) {
        rep.screen_failures += resamples[static_cast<std::size_t>(i)];
        if (rep.per_trial[static_cast<std::size_t>(i)].rejected) ++rep.rejections;
    }
    rep.false_positive_rate = static_cast<double>(rep.rejections) / static_cast<double>(n_trials);
    rep.wilson95 = wilson_ci95(rep.rejections, n_trials);
    return rep;
}

}  // namespace spurion
