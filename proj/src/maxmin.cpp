// mamimo: massive-MIMO uplink rate engine for human/machine-type coexistence
// Copyright (C) 2026 The mamimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mamimo/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "parallel.hpp"

namespace mamimo {

namespace {

constexpr double kCapSlack = 1e-9;

SchemeConfig config_for(const OptimizationProblem& problem, int np_m, double alpha) {
    const auto& s = problem.scheme;
    switch (s.scheme) {
        case Scheme::SC1: return SchemeConfig::sc1(s.N, s.np_h, np_m, alpha);
        case Scheme::SC2: return SchemeConfig::sc2(s.N, problem.scenario.num_humans(), np_m);
        case Scheme::SC3: return SchemeConfig::sc3(s.N, s.np_h, np_m);
    }
    return s;
}

/// Single-device SINR bound at full power with no interference, turned into
/// a rate; an upper bound on any achievable min rate of the class.
double class_rate_bound(const Scenario& scenario, const SchemeConfig& config, DeviceClass cls) {
    const double pre = prelog(config, cls);
    const bool human = cls == DeviceClass::Human;
    const int lo = human ? 0 : scenario.num_humans();
    const int hi = human ? scenario.num_humans() : scenario.num_devices();
    if (lo == hi) return std::numeric_limits<double>::infinity();
    const int window = human ? config.np_h : config.machine_window();
    const double pmax = scenario.p_max();
    const double s2 = scenario.noise_power();
    double bound = std::numeric_limits<double>::infinity();
    for (int k = lo; k < hi; ++k) {
        const double b = scenario.beta()(k);
        const double g = gamma_bar_kernel(window, pmax, b, 0.0, 0.0, 0.0, s2);
        const double sinr = scenario.antennas() * pmax * g / (pmax * b + s2);
        bound = std::min(bound, pre * std::log2(1.0 + sinr));
    }
    // Pad so the bound itself is never the binding constraint.
    return bound * (1.0 + 1e-9) + 1e-12;
}

using TargetFn = std::function<std::pair<double, double>(double)>;

/// Bisection on a scalar rate parameter t mapped to per-class rate targets.
RateRegionPoint bisect(const OptimizationProblem& problem, const SchemeConfig& config, const TargetFn& targets,
                       double hi) {
    const Scenario& sc = problem.scenario;
    const double pre_h = prelog(config, DeviceClass::Human);
    const double pre_m = prelog(config, DeviceClass::Machine);

    auto attempt = [&](double t) -> std::optional<PowerAllocation> {
        const auto [rate_h, rate_m] = targets(t);
        const auto tau_h = sinr_target(rate_h, pre_h);
        auto tau_m = sc.num_machines() > 0 ? sinr_target(rate_m, pre_m) : std::optional<double>(0.0);
        if (!tau_h || !tau_m) return std::nullopt;
        PowerSolution sol = solve_min_powers(sc, config, problem.pilot_power_mode, *tau_h, *tau_m,
                                             problem.max_iterations);
        if (!sol.feasible) return std::nullopt;
        return std::move(sol.powers);
    };

    RateRegionPoint point;
    point.np_m_opt = config.np_m;
    point.alpha_opt = config.alpha_h;
    point.floor = targets(0.0).second;

    auto best = attempt(0.0);
    if (!best) {
        point.powers = PowerAllocation::uniform(sc, 0.0, 0.0);
        return point;
    }
    double lo = 0.0;
    if (!std::isfinite(hi)) hi = 0.0;
    while (hi - lo > problem.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (auto p = attempt(mid)) {
            lo = mid;
            best = std::move(p);
        } else {
            hi = mid;
        }
    }

    const RateReport report = rates(sc, *best, config);
    point.feasible = true;
    point.powers = std::move(*best);
    point.R_h = report.min_human_rate;
    point.R_m = report.min_machine_rate.value_or(0.0);
    return point;
}

/// Runs `evaluate` over every (alpha, Np_m) candidate and keeps the best
/// feasible point by `score`; iteration order makes ties resolve to the
/// first alpha in the grid and the smallest Np_m.
RateRegionPoint search(const OptimizationProblem& problem,
                       const std::function<RateRegionPoint(const SchemeConfig&)>& evaluate,
                       const std::function<double(const RateRegionPoint&)>& score,
                       std::span<const double> alphas) {
    const std::vector<int> lengths = admissible_pilot_lengths(problem);
    std::vector<SchemeConfig> candidates;
    for (double a : alphas)
        for (int np_m : lengths) candidates.push_back(config_for(problem, np_m, a));

    std::vector<std::optional<RateRegionPoint>> results(candidates.size());
    detail::parallel_for(static_cast<int>(candidates.size()), problem.threads,
                         [&](int i) { results[static_cast<std::size_t>(i)] = evaluate(candidates[i]); });

    std::optional<RateRegionPoint> best;
    for (auto& r : results) {
        if (!best || (r->feasible && (!best->feasible || score(*r) > score(*best)))) best = std::move(r);
    }
    return std::move(*best);
}

std::vector<double> alphas_for(const OptimizationProblem& problem) {
    if (problem.scheme.scheme != Scheme::SC1) return {1.0};
    return problem.alpha_grid;
}

}  // namespace

std::vector<double> OptimizationProblem::default_alpha_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    return grid;
}

void validate(const OptimizationProblem& problem) {
    if (!(problem.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
    if (!(problem.machine_rate_floor >= 0.0)) throw ConfigError("machine_rate_floor must be >= 0");
    if (problem.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (problem.scheme.scheme == Scheme::SC1) {
        if (problem.alpha_grid.empty()) throw ConfigError("alpha grid must not be empty");
        for (double a : problem.alpha_grid)
            if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha grid values must lie in [0, 1]");
    }
    if (problem.scheme.np_h < problem.scenario.num_humans() && problem.scheme.scheme != Scheme::SC2)
        throw ConfigError("Np_h must be >= K_h for orthogonal human pilots");
}

std::optional<double> sinr_target(double rate, double prelog) {
    if (rate <= 0.0) return 0.0;
    if (prelog <= 0.0) return std::nullopt;
    return std::exp2(rate / prelog) - 1.0;
}

namespace {

struct PowerSystem {
    const Scenario& scenario;
    const SchemeConfig& config;
    Eigen::VectorXd tau;
    std::vector<int> active;
    double pmax;
    double weight;

    PowerSystem(const Scenario& s, const SchemeConfig& c, double human_sinr, double machine_sinr)
        : scenario(s), config(c), tau(Eigen::VectorXd::Zero(s.num_devices())), pmax(s.p_max()) {
        weight = c.scheme == Scheme::SC2 ? static_cast<double>(c.machine_window()) / c.np_m : 1.0;
        for (int k = 0; k < s.num_devices(); ++k) {
            tau(k) = s.is_human(k) ? human_sinr : machine_sinr;
            if (tau(k) > 0.0) active.push_back(k);
        }
    }

    bool out_of_range(double x) const { return !std::isfinite(x) || x <= 0.0 || x > pmax * (1.0 + kCapSlack); }
};

/// q = p_max: row k reads p_k = tau_k / M * (sum_j F_kj p_j + c_k). The
/// coefficients are constant except for the SC3 human terms, which are
/// refreshed from the previous iterate; starting at p = 0 the iterates grow
/// monotonically to the least solution.
PowerSolution solve_fixed_pilots(const PowerSystem& sys, int max_iterations) {
    const Scenario& sc = sys.scenario;
    const int kk = sc.num_devices();
    const int kh = sc.num_humans();
    const double m = sc.antennas();
    const double s2 = sc.noise_power();
    const double pmax = sys.pmax;
    const Eigen::VectorXd& b = sc.beta();
    const bool shared_ci = sys.config.scheme != Scheme::SC1;
    const bool sc3 = sys.config.scheme == Scheme::SC3;
    const int np_w = sys.config.machine_window();

    PowerSolution out;
    out.powers = PowerAllocation::uniform(sc, 0.0, pmax);
    const Eigen::VectorXd q = Eigen::VectorXd::Constant(kk, pmax);
    const Eigen::VectorXd others_qb = sum_excluding_self(q.tail(kk - kh).cwiseProduct(b.tail(kk - kh)));
    const auto n = static_cast<Eigen::Index>(sys.active.size());

    Eigen::VectorXd p = Eigen::VectorXd::Zero(kk);
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd rhs(n);
    for (int it = 1; it <= max_iterations; ++it) {
        out.iterations = it;
        const double human_rx = sc3 ? p.head(kh).dot(b.head(kh)) : 0.0;
        a.setZero();
        for (Eigen::Index r = 0; r < n; ++r) {
            const int k = sys.active[r];
            const bool human = k < kh;
            const double g = human ? gamma_bar_kernel(sys.config.np_h, q(k), b(k), 0.0, 0.0, 0.0, s2)
                                   : gamma_bar_kernel(np_w, q(k), b(k), sys.weight, others_qb(k - kh),
                                                      human_rx, s2);
            const double scale = sys.tau(k) / m;
            const double coh = human ? 0.0 : (m / sys.config.np_m) / (q(k) * b(k) * b(k));
            for (Eigen::Index c = 0; c < n; ++c) {
                const int j = sys.active[c];
                double f = 0.0;
                if (shared_ci || (j < kh) == human) f += b(j) / g;
                if (!human && j >= kh && j != k) f += coh * q(j) * b(j) * b(j);
                if (!human && sc3 && j < kh) f += coh * p(j) * b(j) * b(j);
                a(r, c) = -scale * f;
            }
            a(r, r) += 1.0;
            rhs(r) = scale * s2 / g;
        }

        const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
        Eigen::VectorXd next = Eigen::VectorXd::Zero(kk);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (sys.out_of_range(x(r))) return out;
            next(sys.active[r]) = std::min(x(r), pmax);
        }
        const double change = (next - p).cwiseAbs().maxCoeff();
        p = next;
        if (!sc3 || change <= 1e-12 * pmax + 1e-10 * p.maxCoeff()) {
            out.feasible = true;
            out.powers.p = p;
            return out;
        }
    }
    out.iteration_cap_hit = true;
    return out;
}

/// q = p: with the other devices held fixed, SINR_k >= tau_k is a quadratic
/// condition in p_k whose positive root grows with every other power, so the
/// best-response iteration from p = 0 climbs monotonically to the least
/// feasible allocation.
PowerSolution solve_tied(const PowerSystem& sys, int max_iterations) {
    const Scenario& sc = sys.scenario;
    const int kk = sc.num_devices();
    const int kh = sc.num_humans();
    const double m = sc.antennas();
    const double s2 = sc.noise_power();
    const Eigen::VectorXd& b = sc.beta();
    const bool shared_ci = sys.config.scheme != Scheme::SC1;
    const bool sc3 = sys.config.scheme == Scheme::SC3;
    const int np_w = sys.config.machine_window();
    const double coh_scale = m / sys.config.np_m;

    PowerSolution out;
    out.powers = PowerAllocation::uniform(sc, 0.0, 0.0);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(kk);
    Eigen::VectorXd next(kk);
    for (int it = 1; it <= max_iterations; ++it) {
        out.iterations = it;
        const Eigen::VectorXd pb = p.cwiseProduct(b);
        const Eigen::VectorXd pb2 = pb.cwiseAbs2();
        const double human_rx = pb.head(kh).sum();
        const double machine_rx = pb.tail(kk - kh).sum();
        const double machine_pb2 = pb2.tail(kk - kh).sum();
        const double human_pb2 = pb2.head(kh).sum();
        next.setZero();
        for (int k : sys.active) {
            const bool human = k < kh;
            const double t = sys.tau(k) / m;
            if (t >= 1.0) return out;
            const double rx = (shared_ci ? human_rx + machine_rx : human ? human_rx : machine_rx) - pb(k);
            const double a_k = rx + s2;
            double contamination = s2;
            double coherent = 0.0;
            int window = sys.config.np_h;
            if (!human) {
                window = np_w;
                contamination += sys.weight * (machine_rx - pb(k)) + (sc3 ? human_rx : 0.0);
                coherent = coh_scale * (machine_pb2 - pb2(k) + (sc3 ? human_pb2 : 0.0)) / (b(k) * b(k));
            }
            const double d_k = contamination / (window * b(k) * b(k));
            // (1 - t) x^2 - t (a/b + b d) x - t (a d + C) = 0
            const double qa = 1.0 - t;
            const double qb = t * (a_k / b(k) + b(k) * d_k);
            const double qc = t * (a_k * d_k + coherent);
            const double x = (qb + std::sqrt(qb * qb + 4.0 * qa * qc)) / (2.0 * qa);
            if (sys.out_of_range(x)) return out;
            next(k) = std::min(x, sys.pmax);
        }
        const double change = (next - p).cwiseAbs().maxCoeff();
        p = next;
        if (change <= 1e-12 * sys.pmax + 1e-10 * p.maxCoeff()) {
            out.feasible = true;
            out.powers.p = p;
            out.powers.q = p;
            return out;
        }
    }
    out.iteration_cap_hit = true;
    return out;
}

}  // namespace

PowerSolution solve_min_powers(const Scenario& scenario, const SchemeConfig& config, PilotPowerMode mode,
                               double human_sinr, double machine_sinr, int max_iterations) {
    const PowerSystem sys(scenario, config, human_sinr, machine_sinr);
    if (sys.active.empty()) {
        PowerSolution out;
        out.feasible = true;
        const double q = mode == PilotPowerMode::TiedToData ? 0.0 : scenario.p_max();
        out.powers = PowerAllocation::uniform(scenario, 0.0, q);
        return out;
    }
    return mode == PilotPowerMode::TiedToData ? solve_tied(sys, max_iterations)
                                              : solve_fixed_pilots(sys, max_iterations);
}

std::vector<int> admissible_pilot_lengths(const OptimizationProblem& problem) {
    const auto& s = problem.scheme;
    int hi = 0;
    switch (s.scheme) {
        case Scheme::SC1: hi = s.N - 1; break;
        case Scheme::SC2: hi = s.N - 1 - problem.scenario.num_humans(); break;
        case Scheme::SC3: hi = s.N - s.np_h - 1; break;
    }
    if (hi < 1) throw ConfigError("no admissible machine pilot length for this N");
    std::vector<int> out;
    for (int np_m = 1; np_m <= hi; ++np_m) out.push_back(np_m);
    return out;
}

RateRegionPoint maxmin_power_control(const OptimizationProblem& problem, int np_m, double alpha) {
    validate(problem);
    const SchemeConfig config = config_for(problem, np_m, alpha);
    validate(config, problem.scenario.num_humans());
    const double floor = problem.machine_rate_floor;
    return bisect(problem, config, [floor](double t) { return std::pair{t, floor}; },
                  class_rate_bound(problem.scenario, config, DeviceClass::Human));
}

RateRegionPoint optimize_pilot_length(const OptimizationProblem& problem) {
    validate(problem);
    const double floor = problem.machine_rate_floor;
    const std::vector<double> alphas = alphas_for(problem);
    return search(
        problem,
        [&](const SchemeConfig& config) {
            return bisect(problem, config, [floor](double t) { return std::pair{t, floor}; },
                          class_rate_bound(problem.scenario, config, DeviceClass::Human));
        },
        [](const RateRegionPoint& p) { return p.R_h; }, alphas);
}

std::vector<RateRegionPoint> rate_region_sweep(const OptimizationProblem& problem,
                                               std::span<const double> floors) {
    std::vector<RateRegionPoint> out;
    out.reserve(floors.size());
    for (double f : floors) {
        OptimizationProblem at = problem;
        at.machine_rate_floor = f;
        out.push_back(optimize_pilot_length(at));
    }
    return out;
}

RateRegionPoint equal_rate_point(const OptimizationProblem& problem) {
    validate(problem);
    const std::vector<double> alphas = alphas_for(problem);
    RateRegionPoint best = search(
        problem,
        [&](const SchemeConfig& config) {
            const double hi = std::min(class_rate_bound(problem.scenario, config, DeviceClass::Human),
                                       class_rate_bound(problem.scenario, config, DeviceClass::Machine));
            RateRegionPoint p = bisect(problem, config, [](double t) { return std::pair{t, t}; }, hi);
            p.floor = problem.scenario.num_machines() > 0 ? std::min(p.R_h, p.R_m) : p.R_h;
            return p;
        },
        [](const RateRegionPoint& p) { return p.floor; }, alphas);
    return best;
}

RateRegionPoint max_machine_rate(const OptimizationProblem& problem) {
    validate(problem);
    if (problem.scenario.num_machines() == 0) throw ConfigError("scenario has no machines");
    const std::vector<double> alphas{problem.scheme.scheme == Scheme::SC1 ? 0.0 : 1.0};
    return search(
        problem,
        [&](const SchemeConfig& config) {
            return bisect(problem, config, [](double t) { return std::pair{0.0, t}; },
                          class_rate_bound(problem.scenario, config, DeviceClass::Machine));
        },
        [](const RateRegionPoint& p) { return p.R_m; }, alphas);
}

double asymptotic_min_machine_rate(const Scenario& scenario, const PowerAllocation& power,
                                   const SchemeConfig& config) {
    if (scenario.num_machines() == 0) return std::numeric_limits<double>::infinity();
    const double pre = prelog(config, DeviceClass::Machine);
    const std::vector<LimitSinr> limits = asymptotic_sinr(scenario, power, config);
    double out = std::numeric_limits<double>::infinity();
    for (int k = scenario.num_humans(); k < scenario.num_devices(); ++k) {
        const LimitSinr& l = limits[static_cast<std::size_t>(k)];
        if (!l.unbounded) out = std::min(out, pre * std::log2(1.0 + l.value));
    }
    return out;
}

std::vector<AntennaSweepPoint> antenna_sweep(const OptimizationProblem& problem,
                                             std::span<const int> antenna_grid, SweepPowers powers) {
    validate(problem);
    std::vector<AntennaSweepPoint> out(antenna_grid.size());
    detail::parallel_for(static_cast<int>(antenna_grid.size()), problem.threads, [&](int i) {
        OptimizationProblem at = problem;
        at.scenario = problem.scenario.with_antennas(antenna_grid[static_cast<std::size_t>(i)]);
        at.threads = 1;

        AntennaSweepPoint& pt = out[static_cast<std::size_t>(i)];
        pt.antennas = at.scenario.antennas();
        SchemeConfig config = problem.scheme;
        PowerAllocation power = PowerAllocation::full(at.scenario);
        if (powers == SweepPowers::Optimized) {
            const RateRegionPoint& opt = pt.optimized.emplace(equal_rate_point(at));
            config = config_for(at, opt.np_m_opt, opt.alpha_opt);
            if (opt.feasible) power = opt.powers;
        }
        validate(config, at.scenario.num_humans());
        pt.report = rates(at.scenario, power, config);
        pt.min_human_rate = pt.report.min_human_rate;
        pt.min_machine_rate = pt.report.min_machine_rate.value_or(0.0);
        pt.asymptotic_machine_rate = asymptotic_min_machine_rate(at.scenario, power, config);
        pt.gap = pt.asymptotic_machine_rate - pt.min_machine_rate;
    });
    return out;
}

}  // namespace mamimo
