#include "palopt/annealer.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace palopt {

namespace {

// Redraws of a perturbed color before the move is abandoned.
constexpr int kPerturbAttempts = 100;
// Random draws per slot when building a starting palette.
constexpr int kInitialDraws = 200;

// Palette without cached distances, for the public propose/refine entry points.
class PlainState {
public:
    explicit PlainState(Palette p) : p_(std::move(p)) { p_.locked.resize(p_.size(), false); }

    std::size_t size() const { return p_.size(); }
    bool fixed(std::size_t i) const { return i == size() || p_.is_locked(i); }
    const LabColor &color(std::size_t i) const { return i == size() ? p_.background : p_.colors[i]; }
    double delta(std::size_t i, std::size_t j) const { return ciede2000(color(i), color(j)); }
    void set_color(std::size_t i, const LabColor &c) { p_.colors[i] = c; }
    void swap_colors(std::size_t i, std::size_t j) { std::swap(p_.colors[i], p_.colors[j]); }
    const Palette &palette() const { return p_; }

private:
    Palette p_;
};

LabColor perturb(const LabColor &c, const AnnealConfig &cfg, const ColorFilter &f, Rng &rng) {
    const double s = cfg.perturb_sigma;
    for (int t = 0; t < kPerturbAttempts; ++t) {
        const LabColor q{c.L + rng.uniform(-s, s), c.a + rng.uniform(-s, s),
                         c.b + rng.uniform(-s, s)};
        if (is_candidate(q, f))
            return q;
    }
    return c;
}

std::vector<std::size_t> unlocked_slots(const Palette &p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.is_locked(i))
            out.push_back(i);
    return out;
}

template <class State>
void propose_in_place(State &s, const std::vector<std::size_t> &unlocked, const AnnealConfig &cfg,
                      const ColorFilter &f, Rng &rng) {
    const std::size_t n = unlocked.size();
    if (n == 0)
        throw AllLocked("every palette color is locked");
    if (n >= 2 && rng.uniform() < cfg.swap_probability) {
        const std::size_t a = rng.index(n);
        std::size_t b = rng.index(n - 1);
        if (b >= a)
            ++b;
        s.swap_colors(unlocked[a], unlocked[b]);
        return;
    }
    const std::size_t i = unlocked[rng.index(n)];
    s.set_color(i, perturb(s.color(i), cfg, f, rng));
}

template <class State>
void refine_in_place(State &s, double tau, const ColorFilter &f, const AnnealConfig &cfg,
                     Rng &rng) {
    const std::size_t m = s.size();
    std::vector<char> violating(m);
    for (int attempt = 0;; ++attempt) {
        std::fill(violating.begin(), violating.end(), 0);
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (!s.fixed(i) && !is_candidate(s.color(i), f)) {
                violating[i] = 2;
                any = true;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j <= m; ++j) {
                if (s.delta(i, j) >= tau)
                    continue;
                if (s.fixed(i) && s.fixed(j))
                    throw RefinementFailed(
                        "locked colors " + std::to_string(i) + " and " +
                        (j == m ? std::string("background") : std::to_string(j)) +
                        " are closer than the threshold " + std::to_string(tau));
                any = true;
                if (!s.fixed(i) && violating[i] == 0)
                    violating[i] = 1;
                if (!s.fixed(j) && violating[j] == 0)
                    violating[j] = 1;
            }
        }
        if (!any)
            return;
        if (attempt >= cfg.refine_max_attempts)
            throw RefinementFailed("could not separate all colors by " + std::to_string(tau) +
                                   " after " + std::to_string(cfg.refine_max_attempts) +
                                   " rounds");
        for (std::size_t i = 0; i < m; ++i) {
            if (violating[i] == 1)
                s.set_color(i, perturb(s.color(i), cfg, f, rng));
            else if (violating[i] == 2)
                s.set_color(i, sample_candidate(f, rng));
        }
    }
}

// Random candidates, each drawn to keep tau from the colors already placed
// when possible; refinement cleans up the rest.
Palette initial_palette(std::size_t m, const InitialPalette &init, const AnnealConfig &cfg,
                        const ColorFilter &f, Rng &rng) {
    if (!init.locked.empty() && init.locked.size() != m)
        throw SizeMismatch("locked list has " + std::to_string(init.locked.size()) +
                           " entries for " + std::to_string(m) + " classes");
    if (!init.start.empty() && init.start.size() != m)
        throw SizeMismatch("initial palette has " + std::to_string(init.start.size()) +
                           " colors for " + std::to_string(m) + " classes");
    Palette p;
    p.background = init.background;
    p.colors.assign(m, LabColor{});
    p.locked.assign(m, false);
    std::vector<LabColor> placed{init.background};
    for (std::size_t i = 0; i < m; ++i) {
        if (!init.locked.empty() && init.locked[i]) {
            p.colors[i] = *init.locked[i];
            p.locked[i] = true;
            placed.push_back(p.colors[i]);
        }
    }
    auto min_distance = [&](const LabColor &c) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto &q : placed)
            d = std::min(d, ciede2000(c, q));
        return d;
    };
    for (std::size_t i = 0; i < m; ++i) {
        if (p.locked[i])
            continue;
        if (!init.start.empty()) {
            p.colors[i] = init.start[i];
        } else {
            LabColor best = sample_candidate(f, rng);
            double best_d = min_distance(best);
            for (int t = 1; t < kInitialDraws && best_d < cfg.tau; ++t) {
                const LabColor c = sample_candidate(f, rng);
                const double d = min_distance(c);
                if (d > best_d) {
                    best = c;
                    best_d = d;
                }
            }
            p.colors[i] = best;
        }
        placed.push_back(p.colors[i]);
    }
    return p;
}

} // namespace

void AnnealConfig::validate() const {
    if (!(cooling > 0.0 && cooling < 1.0))
        throw InvalidConfig("cooling coefficient must lie in (0, 1)");
    if (!(t_start > 0.0 && t_end > 0.0 && t_end < t_start))
        throw InvalidConfig("temperatures must satisfy 0 < t_end < t_start");
    if (!(tau > 0.0))
        throw InvalidConfig("tau must be positive");
    if (!(perturb_sigma > 0.0))
        throw InvalidConfig("perturbation scale must be positive");
    if (!(swap_probability >= 0.0 && swap_probability <= 1.0))
        throw InvalidConfig("swap probability must lie in [0, 1]");
    if (refine_max_attempts < 1)
        throw InvalidConfig("refine_max_attempts must be at least 1");
}

std::size_t AnnealConfig::temperature_steps() const {
    return static_cast<std::size_t>(std::ceil(std::log(t_end / t_start) / std::log(cooling)));
}

Palette propose(const Palette &p, const AnnealConfig &cfg, const ColorFilter &f, Rng &rng) {
    PlainState s(p);
    propose_in_place(s, unlocked_slots(s.palette()), cfg, f, rng);
    return s.palette();
}

Palette refine(const Palette &p, double tau, const ColorFilter &f, const AnnealConfig &cfg,
               Rng &rng) {
    if (!(tau > 0.0))
        throw InvalidConfig("tau must be positive");
    PlainState s(p);
    refine_in_place(s, tau, f, cfg, rng);
    return s.palette();
}

bool accept(double e_new, double e_old, double temperature, Rng &rng) {
    if (e_new >= e_old)
        return true;
    return rng.uniform() < std::exp((e_new - e_old) / temperature);
}

AnnealResult optimize(const ClassPairWeights &weights, const NameCountMatrix &names,
                      const ScoreWeights &sw, const AnnealConfig &cfg, const ColorFilter &f,
                      const InitialPalette &init, const AnnealObserver &observer) {
    const auto started = std::chrono::steady_clock::now();
    cfg.validate();
    f.validate();
    ScoreWeights run_weights = sw;
    run_weights.pd_norm = 1.0;
    run_weights.validate();
    const std::size_t m = weights.class_count();
    if (m == 0)
        throw InvalidConfig("nothing to color: no classes");

    Rng rng(cfg.seed);
    PaletteScorer current(weights, names, run_weights, initial_palette(m, init, cfg, f, rng));
    refine_in_place(current, cfg.tau, f, cfg, rng);

    AnnealResult result;
    const double raw_pd = current.raw_point_distinctness();
    result.pd_norm = raw_pd > 0.0 ? raw_pd : 1.0;
    current.set_pd_norm(result.pd_norm);

    double current_energy = current.energy();
    result.best_palette = current.palette();
    result.best_energy = current_energy;
    result.energy_trace.push_back({0, current_energy, current_energy});

    const auto unlocked = unlocked_slots(current.palette());
    if (!unlocked.empty()) {
        const std::size_t steps = cfg.temperature_steps();
        const std::size_t per_step =
            cfg.proposals_per_temperature > 0 ? cfg.proposals_per_temperature : m;
        PaletteScorer trial = current;
        for (std::size_t step = 0; step < steps; ++step) {
            const double temperature =
                cfg.t_start * std::pow(cfg.cooling, static_cast<double>(step));
            for (std::size_t k = 0; k < per_step; ++k) {
                trial = current;
                propose_in_place(trial, unlocked, cfg, f, rng);
                bool feasible = true;
                try {
                    refine_in_place(trial, cfg.tau, f, cfg, rng);
                } catch (const RefinementFailed &) {
                    feasible = false; // keep the current, feasible palette
                }
                ++result.iterations;
                if (!feasible)
                    continue;
                const double trial_energy = trial.energy();
                if (accept(trial_energy, current_energy, temperature, rng)) {
                    std::swap(current, trial);
                    current_energy = trial_energy;
                    if (current_energy > result.best_energy) {
                        result.best_energy = current_energy;
                        result.best_palette = current.palette();
                    }
                }
            }
            ++result.temperature_steps;
            const TraceEntry entry{result.iterations, current_energy, result.best_energy};
            result.energy_trace.push_back(entry);
            if (observer)
                observer(entry);
            if (cfg.deadline && std::chrono::steady_clock::now() >= *cfg.deadline &&
                step + 1 < steps) {
                result.truncated = true;
                break;
            }
        }
    }

    ScoreWeights final_weights = run_weights;
    final_weights.pd_norm = result.pd_norm;
    result.best_breakdown = score_palette(weights, names, result.best_palette, final_weights);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

AnnealResult optimize_restarts(const ClassPairWeights &weights, const NameCountMatrix &names,
                               const ScoreWeights &sw, const AnnealConfig &cfg,
                               const ColorFilter &f, const std::vector<std::uint64_t> &seeds,
                               const InitialPalette &init) {
    if (seeds.empty())
        throw InvalidConfig("at least one seed is required");
    if (seeds.size() == 1) {
        AnnealConfig c = cfg;
        c.seed = seeds[0];
        return optimize(weights, names, sw, c, f, init);
    }
    std::vector<std::future<AnnealResult>> runs;
    runs.reserve(seeds.size());
    for (auto seed : seeds) {
        AnnealConfig c = cfg;
        c.seed = seed;
        runs.push_back(std::async(std::launch::async, [&, c] {
            return optimize(weights, names, sw, c, f, init);
        }));
    }
    std::vector<AnnealResult> results;
    results.reserve(runs.size());
    for (auto &r : runs)
        results.push_back(r.get());

    ScoreWeights common = sw;
    common.pd_norm = results.front().pd_norm;
    std::size_t best = 0;
    double best_energy = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < results.size(); ++r) {
        const double e = total_energy(weights, names, results[r].best_palette, common);
        if (e > best_energy) {
            best_energy = e;
            best = r;
        }
    }
    return std::move(results[best]);
}

void write_trace_csv(std::ostream &out, const std::vector<TraceEntry> &trace) {
    out << "iteration,current_energy,best_energy\n";
    out.precision(17);
    for (const auto &e : trace)
        out << e.iteration << ',' << e.current_energy << ',' << e.best_energy << '\n';
}

} // namespace palopt
