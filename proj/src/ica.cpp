#include "paletteforge/ica.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "paletteforge/kernels.hpp"

namespace paletteforge::ica {

void IcaParams::validate() const {
    if (n_imp < 1 || n_imp >= n_country)
        throw BadParams("ica: need 1 <= n_imp < n_country");
    if (n_country - n_imp < n_imp)
        throw BadParams("ica: need n_country - n_imp >= n_imp");
    if (!(alpha > 0.0 && alpha < 1.0)) throw BadParams("ica: alpha must be in (0, 1)");
    if (!(attraction_prob >= 0.0 && attraction_prob <= 1.0))
        throw BadParams("ica: attraction_prob must be in [0, 1]");
    if (!(revolution_prob >= 0.0 && revolution_prob <= 1.0))
        throw BadParams("ica: revolution_prob must be in [0, 1]");
    if (max_iters < 1) throw BadParams("ica: max_iters must be positive");
    if (stall_window < 1) throw BadParams("ica: stall_window must be positive");
}

std::string to_string(StopReason reason) {
    return reason == StopReason::stall ? "stall" : "budget";
}

std::vector<Country> init_population(std::size_t palette_size, const IcaParams& params,
                                     const CooccurrenceMatrix& matrix, Rng& rng) {
    params.validate();
    if (palette_size < 1) throw BadParams("ica: palette size must be >= 1");

    std::vector<Permutation> genomes;
    genomes.reserve(params.n_country);
    for (std::size_t i = 0; i < params.n_country; ++i)
        genomes.push_back(random_permutation(palette_size, rng));

    std::vector<std::int64_t> costs(genomes.size());
    kernels::evaluate_costs(matrix, genomes, costs);

    std::vector<Country> countries;
    countries.reserve(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i)
        countries.push_back(Country{std::move(genomes[i]), costs[i]});
    return countries;
}

std::int64_t evaluate(const Permutation& genome, const CooccurrenceMatrix& matrix) {
    return matrix.evaluate(genome);
}

std::vector<double> imperialist_powers(const std::vector<Country>& imperialists) {
    const std::size_t n = imperialists.size();
    std::int64_t max_cost = std::numeric_limits<std::int64_t>::min();
    for (const Country& c : imperialists) max_cost = std::max(max_cost, c.cost);

    std::vector<double> powers(n, 0.0);
    double deficit_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        powers[i] = double(max_cost - imperialists[i].cost);
        deficit_sum += powers[i];
    }
    if (deficit_sum == 0.0) {  // all costs equal
        std::fill(powers.begin(), powers.end(), 1.0 / double(n));
        return powers;
    }
    for (double& p : powers) p /= deficit_sum;
    return powers;
}

std::vector<std::size_t> colony_quota(const std::vector<double>& powers, std::size_t n_colony) {
    const std::size_t n = powers.size();
    std::vector<std::size_t> quota(n, 0);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        quota[i] = std::size_t(std::floor(powers[i] * double(n_colony)));
        assigned += quota[i];
    }

    // Hand leftover colonies to empires in descending power, ties by index.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return powers[a] > powers[b]; });
    for (std::size_t k = 0; assigned < n_colony; ++k, ++assigned) ++quota[order[k % n]];
    return quota;
}

std::vector<Empire> form_empires(const std::vector<Country>& countries, const IcaParams& params) {
    params.validate();
    if (countries.size() != params.n_country)
        throw BadParams("ica: population size does not match params");

    std::vector<std::size_t> order(countries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return countries[a].cost < countries[b].cost;
    });

    std::vector<Country> imperialists;
    imperialists.reserve(params.n_imp);
    for (std::size_t i = 0; i < params.n_imp; ++i) imperialists.push_back(countries[order[i]]);

    const std::vector<double> powers = imperialist_powers(imperialists);
    const std::vector<std::size_t> quota = colony_quota(powers, params.n_colony());

    std::vector<Empire> empires(params.n_imp);
    std::size_t next = params.n_imp;  // position in the sorted order
    for (std::size_t e = 0; e < params.n_imp; ++e) {
        empires[e].imperialist = std::move(imperialists[e]);
        empires[e].colonies.reserve(quota[e]);
        for (std::size_t k = 0; k < quota[e]; ++k)
            empires[e].colonies.push_back(countries[order[next++]]);
    }
    update_total_costs(empires, params.alpha);
    return empires;
}

Permutation crossover_with_cut(const Permutation& imperialist, const Permutation& colony,
                               std::size_t cut) {
    const std::size_t m = imperialist.size();
    if (colony.size() != m) throw LengthMismatch("ica: genome lengths differ");

    Permutation child;
    child.map.resize(m);
    std::array<bool, 256> in_prefix{};
    for (std::size_t i = 0; i < cut; ++i) {
        child.map[i] = imperialist.map[i];
        in_prefix[imperialist.map[i]] = true;
    }
    std::size_t w = cut;
    for (const std::uint8_t v : colony.map)
        if (!in_prefix[v]) child.map[w++] = v;
    return child;
}

Country assimilate(const Country& colony, const Country& imperialist,
                   const CooccurrenceMatrix& matrix, Rng& rng) {
    const std::size_t m = imperialist.genome.size();
    if (colony.genome.size() != m) throw LengthMismatch("ica: genome lengths differ");
    if (m == 1) return colony;

    const std::size_t cut = 1 + std::size_t(uniform_below(rng, m - 1));
    Country child;
    child.genome = crossover_with_cut(imperialist.genome, colony.genome, cut);
    child.cost = matrix.evaluate(child.genome);
    return child;
}

void assimilation_sweep(std::vector<Empire>& empires, const IcaParams& params,
                        const CooccurrenceMatrix& matrix, Rng& rng) {
    const std::size_t m = matrix.palette_size();

    // All randomness is drawn here, in empire/colony order, so the sweep is
    // reproducible no matter how the evaluations are scheduled.
    struct Pending {
        std::size_t empire;
        std::size_t colony;
    };
    std::vector<Pending> pending;
    std::vector<Permutation> children;
    for (std::size_t e = 0; e < empires.size(); ++e) {
        for (std::size_t c = 0; c < empires[e].colonies.size(); ++c) {
            if (uniform_double(rng) >= params.attraction_prob) continue;
            if (m == 1) continue;  // single permutation; nothing can change
            const std::size_t cut = 1 + std::size_t(uniform_below(rng, m - 1));
            pending.push_back(Pending{e, c});
            children.push_back(crossover_with_cut(empires[e].imperialist.genome,
                                                  empires[e].colonies[c].genome, cut));
        }
    }

    std::vector<std::int64_t> costs(children.size());
    kernels::evaluate_costs(matrix, children, costs);

    for (std::size_t i = 0; i < pending.size(); ++i) {
        Country& slot = empires[pending[i].empire].colonies[pending[i].colony];
        slot.genome = std::move(children[i]);
        slot.cost = costs[i];
    }
}

Permutation reverse_slots(const Permutation& genome, std::size_t lo, std::size_t hi) {
    Permutation out = genome;
    for (std::size_t a = 0; a < out.map.size(); ++a)
        if (out.map[a] >= lo && out.map[a] <= hi)
            out.map[a] = std::uint8_t(lo + hi - out.map[a]);
    return out;
}

void revolution_sweep(std::vector<Empire>& empires, const IcaParams& params,
                      const CooccurrenceMatrix& matrix, Rng& rng) {
    const std::size_t m = matrix.palette_size();
    if (m < 2) return;

    struct Pending {
        std::size_t empire;
        std::size_t colony;
    };
    std::vector<Pending> pending;
    std::vector<Permutation> jolted;
    for (std::size_t e = 0; e < empires.size(); ++e) {
        for (std::size_t c = 0; c < empires[e].colonies.size(); ++c) {
            if (uniform_double(rng) >= params.revolution_prob) continue;
            const std::size_t i = std::size_t(uniform_below(rng, m));
            std::size_t j = std::size_t(uniform_below(rng, m - 1));
            if (j >= i) ++j;
            pending.push_back(Pending{e, c});
            jolted.push_back(reverse_slots(empires[e].colonies[c].genome, std::min(i, j),
                                           std::max(i, j)));
        }
    }

    std::vector<std::int64_t> costs(jolted.size());
    kernels::evaluate_costs(matrix, jolted, costs);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        Country& slot = empires[pending[i].empire].colonies[pending[i].colony];
        slot.genome = std::move(jolted[i]);
        slot.cost = costs[i];
    }
}

void promote_best_colony(Empire& empire) {
    if (empire.colonies.empty()) return;
    std::size_t best = 0;
    for (std::size_t c = 1; c < empire.colonies.size(); ++c)
        if (empire.colonies[c].cost < empire.colonies[best].cost) best = c;
    if (empire.colonies[best].cost < empire.imperialist.cost)
        std::swap(empire.colonies[best], empire.imperialist);
}

double empire_total_cost(const Empire& empire, double alpha) {
    if (empire.colonies.empty()) return double(empire.imperialist.cost);
    double colony_sum = 0.0;
    for (const Country& c : empire.colonies) colony_sum += double(c.cost);
    return double(empire.imperialist.cost) + alpha * (colony_sum / double(empire.colonies.size()));
}

void update_total_costs(std::vector<Empire>& empires, double alpha) {
    for (Empire& e : empires) e.total_cost = empire_total_cost(e, alpha);
}

namespace {

std::size_t roulette(const std::vector<double>& weights, Rng& rng) {
    double sum = 0.0;
    for (const double w : weights) sum += w;
    const double u = uniform_double(rng);
    if (sum <= 0.0) {  // all tie: uniform pick
        return std::min(std::size_t(u * double(weights.size())), weights.size() - 1);
    }
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i] / sum;
        if (u < cumulative) return i;
    }
    return weights.size() - 1;
}

}  // namespace

void imperialist_competition(std::vector<Empire>& empires, double alpha, Rng& rng) {
    if (empires.size() <= 1) return;
    update_total_costs(empires, alpha);

    std::size_t weakest = 0;
    for (std::size_t e = 1; e < empires.size(); ++e)
        if (empires[e].total_cost > empires[weakest].total_cost) weakest = e;

    // Contested country: the weakest empire's most expensive colony, or its
    // imperialist when it has no colonies left to give.
    Country contested;
    bool dissolves = false;
    if (empires[weakest].colonies.empty()) {
        contested = std::move(empires[weakest].imperialist);
        dissolves = true;
    } else {
        std::size_t worst = 0;
        for (std::size_t c = 1; c < empires[weakest].colonies.size(); ++c)
            if (empires[weakest].colonies[c].cost > empires[weakest].colonies[worst].cost)
                worst = c;
        contested = std::move(empires[weakest].colonies[worst]);
        empires[weakest].colonies.erase(empires[weakest].colonies.begin() +
                                        std::ptrdiff_t(worst));
    }

    double max_total = empires[0].total_cost;
    for (const Empire& e : empires) max_total = std::max(max_total, e.total_cost);
    std::vector<double> deficits(empires.size());
    for (std::size_t e = 0; e < empires.size(); ++e)
        deficits[e] = max_total - empires[e].total_cost;

    const std::size_t winner = roulette(deficits, rng);
    if (winner == weakest && !dissolves) {
        // Won its own colony back; nothing moves.
        empires[weakest].colonies.push_back(std::move(contested));
        return;
    }

    empires[winner].colonies.push_back(std::move(contested));
    if (!dissolves && empires[weakest].colonies.empty()) {
        // Lost its last colony: the imperialist joins the winner as a colony.
        empires[winner].colonies.push_back(std::move(empires[weakest].imperialist));
        dissolves = true;
    }
    if (dissolves) empires.erase(empires.begin() + std::ptrdiff_t(weakest));
}

bool should_terminate(const RunTrace& trace, const IcaParams& params, StopReason& reason) {
    const std::size_t n = trace.iterations.size();
    if (n >= params.stall_window) {
        const std::int64_t ref = trace.iterations[n - params.stall_window].best_cost;
        bool flat = true;
        for (std::size_t i = n - params.stall_window + 1; i < n && flat; ++i)
            flat = trace.iterations[i].best_cost == ref;
        if (flat) {
            reason = StopReason::stall;
            return true;
        }
    }
    if (n >= params.max_iters) {
        reason = StopReason::budget;
        return true;
    }
    return false;
}

RunTrace optimize(const CooccurrenceMatrix& matrix, const IcaParams& params) {
    params.validate();
    Rng rng(params.seed);

    std::vector<Country> population = init_population(matrix.palette_size(), params, matrix, rng);
    RunTrace trace;
    trace.best = population[0];
    for (const Country& c : population)
        if (c.cost < trace.best.cost) trace.best = c;

    std::vector<Empire> empires = form_empires(population, params);
    population.clear();

    for (;;) {
        assimilation_sweep(empires, params, matrix, rng);
        revolution_sweep(empires, params, matrix, rng);
        for (Empire& e : empires) promote_best_colony(e);
        update_total_costs(empires, params.alpha);
        imperialist_competition(empires, params.alpha, rng);

        double cost_sum = 0.0;
        std::size_t countries = 0;
        for (const Empire& e : empires) {
            if (e.imperialist.cost < trace.best.cost) trace.best = e.imperialist;
            cost_sum += double(e.imperialist.cost);
            ++countries;
            for (const Country& c : e.colonies) {
                if (c.cost < trace.best.cost) trace.best = c;
                cost_sum += double(c.cost);
                ++countries;
            }
        }
        trace.iterations.push_back(IterationRecord{trace.best.cost, cost_sum / double(countries),
                                                   empires.size()});

        StopReason reason = StopReason::budget;
        if (should_terminate(trace, params, reason)) {
            trace.reason = reason;
            break;
        }
    }
    trace.iterations_run = trace.iterations.size();
    return trace;
}

RunTrace run(const IndexedImage& img, const IcaParams& params, ScanMode mode) {
    return optimize(CooccurrenceMatrix::from_image(img, mode), params);
}

}  // namespace paletteforge::ica
