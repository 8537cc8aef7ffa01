#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paletteforge/cooccurrence.hpp"
#include "paletteforge/image.hpp"
#include "paletteforge/rng.hpp"
#include "paletteforge/scan.hpp"

namespace paletteforge::ica {

/// One candidate palette order together with its cached cost.
struct Country {
    Permutation genome;
    std::int64_t cost = 0;
};

/// A leading country plus the countries assigned to it.
struct Empire {
    Country imperialist;
    std::vector<Country> colonies;
    double total_cost = 0.0;

    std::size_t country_count() const { return 1 + colonies.size(); }
};

struct IcaParams {
    std::size_t n_country = 80;
    std::size_t n_imp = 8;
    double alpha = 0.1;            // colony weight in an empire's total cost
    double attraction_prob = 0.9;  // per-colony chance of moving toward its imperialist
    double revolution_prob = 0.1;  // per-colony chance of a random slot-range reversal
    std::size_t max_iters = 500;
    std::size_t stall_window = 50;  // flat best-cost iterations before stopping
    std::uint64_t seed = 1;

    std::size_t n_colony() const { return n_country - n_imp; }
    void validate() const;  // throws BadParams
};

enum class StopReason : std::uint8_t { stall, budget };

std::string to_string(StopReason reason);

struct IterationRecord {
    std::int64_t best_cost = 0;  // best ever, so the series never increases
    double mean_cost = 0.0;      // mean over the whole population this iteration
    std::size_t empire_count = 0;
};

struct RunTrace {
    std::vector<IterationRecord> iterations;
    Country best;
    std::size_t iterations_run = 0;
    StopReason reason = StopReason::budget;
};

/// n_country random permutation countries with evaluated costs.
std::vector<Country> init_population(std::size_t palette_size, const IcaParams& params,
                                     const CooccurrenceMatrix& matrix, Rng& rng);

std::int64_t evaluate(const Permutation& genome, const CooccurrenceMatrix& matrix);

/// Splits a population into empires: the n_imp cheapest countries lead, and
/// colonies are dealt out proportionally to normalized power
/// p_n = (max cost - cost_n) / sum of those deficits (uniform when all tie).
std::vector<Empire> form_empires(const std::vector<Country>& countries, const IcaParams& params);

/// Normalized imperialist powers used by form_empires (sums to 1).
std::vector<double> imperialist_powers(const std::vector<Country>& imperialists);

/// Colony counts per empire: floor(p_n * n_colony), remainders handed out in
/// descending power order.
std::vector<std::size_t> colony_quota(const std::vector<double>& powers, std::size_t n_colony);

/// Prefix of the imperialist up to `cut`, remaining symbols in colony order.
Permutation crossover_with_cut(const Permutation& imperialist, const Permutation& colony,
                               std::size_t cut);

/// Draws the cut uniformly from [1, M-1] (a length-1 genome is returned
/// unchanged) and re-evaluates the result.
Country assimilate(const Country& colony, const Country& imperialist,
                   const CooccurrenceMatrix& matrix, Rng& rng);

/// Each colony is independently selected with attraction_prob and replaced
/// by its crossover with the empire's imperialist. All draws happen here on
/// the calling thread; cost evaluation is batched through the kernels.
void assimilation_sweep(std::vector<Empire>& empires, const IcaParams& params,
                        const CooccurrenceMatrix& matrix, Rng& rng);

/// Reverses the new-index slot range [lo, hi] of the genome: every symbol
/// mapped into the range lands at its mirrored slot. Keeps in-range
/// neighbor distances, so it is a jolt that respects the cost structure.
Permutation reverse_slots(const Permutation& genome, std::size_t lo, std::size_t hi);

/// Revolution step: each colony is independently selected with
/// revolution_prob and replaced by a random slot-range reversal of itself.
/// Without it the population contracts onto the imperialists and the search
/// freezes once they agree.
void revolution_sweep(std::vector<Empire>& empires, const IcaParams& params,
                      const CooccurrenceMatrix& matrix, Rng& rng);

/// Swaps the cheapest colony (ties: lowest index) with the imperialist when
/// it is strictly cheaper.
void promote_best_colony(Empire& empire);

/// imperialist cost + alpha * mean colony cost (imperialist cost alone when
/// there are no colonies).
double empire_total_cost(const Empire& empire, double alpha);

void update_total_costs(std::vector<Empire>& empires, double alpha);

/// The weakest empire (highest total cost) loses its most expensive colony
/// to a roulette draw over normalized total-cost deficits; an empire left
/// with no colonies dissolves into the winner.
void imperialist_competition(std::vector<Empire>& empires, double alpha, Rng& rng);

/// True once the best cost sat flat for stall_window recorded iterations or
/// the iteration budget is exhausted.
bool should_terminate(const RunTrace& trace, const IcaParams& params, StopReason& reason);

/// Full run against a prebuilt co-occurrence matrix.
RunTrace optimize(const CooccurrenceMatrix& matrix, const IcaParams& params);

/// Convenience wrapper: builds the matrix for `mode` and optimizes.
RunTrace run(const IndexedImage& img, const IcaParams& params,
             ScanMode mode = ScanMode::serpentine);

}  // namespace paletteforge::ica
