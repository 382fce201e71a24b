#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "kplot/estimators.hpp"
#include "kplot/random.hpp"
#include "kplot/samplers.hpp"
#include "kplot/stats.hpp"

namespace kplot {

/// Monte-Carlo means and SDs over replicated samples of one design point.
struct SimulationSummary {
    SamplerSpec spec;
    std::size_t reps = 0;
    MeanSd abs_r;
    MeanSd abs_tau;
    MeanSd i_auk;
    MeanSd i_auk_std;
};

/// Draws `reps` samples; replication r uses seed derive_seed(spec.seed, r).
inline SimulationSummary simulate(const SamplerSpec& spec, std::size_t reps) {
    spec.validate();
    if (reps < 1) throw InputError("need at least one replication");
    std::vector<double> r(reps), tau(reps), idx(reps), idx_std(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        SamplerSpec rep = spec;
        rep.seed = derive_seed(spec.seed, i);
        const auto sample = draw(rep);
        const auto d = d_vector(sample);
        r[i] = std::abs(pearson_r(sample));
        tau[i] = std::abs(kendall_tau(sample));
        idx[i] = d.i_auk;
        idx_std[i] = d.i_auk_std;
    }
    SimulationSummary out;
    out.spec = spec;
    out.reps = reps;
    out.abs_r = mean_sd(r);
    out.abs_tau = mean_sd(tau);
    out.i_auk = mean_sd(idx);
    out.i_auk_std = mean_sd(idx_std);
    return out;
}

/// Columns: family,param,n,reps,statistic,mean,sd (one row per statistic).
inline void write_simulation_csv(std::ostream& out, const SimulationSummary& s) {
    out << "family,param,n,reps,statistic,mean,sd\n";
    auto row = [&](const char* name, const MeanSd& m) {
        out << to_string(s.spec.family) << ',' << format_double(s.spec.param) << ',' << s.spec.n << ',' << s.reps << ','
            << name << ',' << format_double(m.mean) << ',' << format_double(m.sd) << '\n';
    };
    row("abs_r", s.abs_r);
    row("abs_tau", s.abs_tau);
    row("i_auk", s.i_auk);
    row("i_auk_std", s.i_auk_std);
}

}  // namespace kplot
