#pragma once

#include "palopt/color_filter.hpp"
#include "palopt/name_model.hpp"
#include "palopt/palette.hpp"
#include "palopt/random.hpp"
#include "palopt/scoring.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace palopt {

struct AnnealConfig {
    double cooling = 0.99;
    double t_start = 100000.0;
    double t_end = 0.001;
    // Minimum dE00 between any two colors, background included.
    double tau = 10.0;
    // 0 means one proposal per class.
    std::size_t proposals_per_temperature = 0;
    // Uniform offset range per LAB channel for a perturbation move.
    double perturb_sigma = 5.0;
    double swap_probability = 0.3;
    int refine_max_attempts = 1000;
    std::uint64_t seed = 7;
    // Stop early and return the best palette so far.
    std::optional<std::chrono::steady_clock::time_point> deadline;

    // Throws InvalidConfig.
    void validate() const;
    // ceil(ln(t_end / t_start) / ln(cooling)).
    std::size_t temperature_steps() const;
};

struct TraceEntry {
    // Proposals evaluated so far.
    std::size_t iteration = 0;
    double current_energy = 0.0;
    double best_energy = 0.0;
};

struct AnnealResult {
    Palette best_palette;
    double best_energy = 0.0;
    EnergyBreakdown best_breakdown;
    // The normalizer E_PD was divided by during the run.
    double pd_norm = 1.0;
    // One entry for the initial palette, then one per temperature step.
    std::vector<TraceEntry> energy_trace;
    std::size_t iterations = 0;
    std::size_t temperature_steps = 0;
    double wall_time = 0.0;
    bool truncated = false;
};

// Starting point for a run. Locked entries are kept verbatim; unlocked
// slots start from `start` when given, otherwise from random candidates.
struct InitialPalette {
    LabColor background{100.0, 0.0, 0.0};
    // Empty, or one entry per class.
    std::vector<std::optional<LabColor>> locked;
    // Empty, or one color per class.
    std::vector<LabColor> start;
};

// Called on the optimizing thread after every temperature step.
using AnnealObserver = std::function<void(const TraceEntry &)>;

// Moves one unlocked color by a uniform offset (redrawn until it is a
// candidate) or, with probability swap_probability, exchanges two unlocked
// colors. Throws AllLocked.
Palette propose(const Palette &p, const AnnealConfig &cfg, const ColorFilter &f, Rng &rng);

// Perturbs unlocked members of every pair closer than tau (background
// included) until no such pair remains. Throws RefinementFailed when a
// violating pair is fully locked or after refine_max_attempts rounds.
Palette refine(const Palette &p, double tau, const ColorFilter &f, const AnnealConfig &cfg,
               Rng &rng);

// Metropolis rule for maximization.
bool accept(double e_new, double e_old, double temperature, Rng &rng);

// Simulated annealing over palettes for `weights.class_count()` classes.
// sw.pd_norm is replaced by the initial palette's raw E_PD
// (1 if that is zero).
AnnealResult optimize(const ClassPairWeights &weights, const NameCountMatrix &names,
                      const ScoreWeights &sw, const AnnealConfig &cfg, const ColorFilter &f,
                      const InitialPalette &init = {}, const AnnealObserver &observer = {});

// Best of independent runs, one per seed, run concurrently. Runs are
// compared by rescoring their best palettes under the first run's
// normalizer; ties go to the earlier seed.
AnnealResult optimize_restarts(const ClassPairWeights &weights, const NameCountMatrix &names,
                               const ScoreWeights &sw, const AnnealConfig &cfg,
                               const ColorFilter &f, const std::vector<std::uint64_t> &seeds,
                               const InitialPalette &init = {});

// CSV "iteration,current_energy,best_energy".
void write_trace_csv(std::ostream &out, const std::vector<TraceEntry> &trace);

} // namespace palopt
