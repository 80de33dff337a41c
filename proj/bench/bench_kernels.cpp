// Serial vs OpenMP timings for the break-search and Monte Carlo kernels.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ecm/critical_values.hpp"
#include "ecm/parallel.hpp"
#include "ecm/unit_root.hpp"

namespace {

ecm::Series random_walk(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    double x = 0.0;
    for (auto& e : v) e = (x += z(rng));
    return ecm::Series("rw", 1900, std::move(v));
}

template <class Fn>
double seconds(Fn&& fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
    std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name.c_str(), serial, parallel,
                serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) ecm::set_worker_count(std::stoi(argv[1]));
    std::printf("workers: %d\n", ecm::worker_count());

    const ecm::Series s = random_walk(200, 7);
    ecm::UnitRootModelSpec za{ecm::Deterministic::constant_trend, ecm::BreakStyle::innovational_outlier,
                              ecm::BreakKind::both, ecm::LagSelection{ecm::LagMethod::aic, 4, 0.10}};
    ecm::UnitRootOutcome a, b;
    const double za_s = seconds([&] { a = ecm::zivot_andrews(s, za, 0.15, {}, ecm::Execution::serial); }, 5);
    const double za_p = seconds([&] { b = ecm::zivot_andrews(s, za, 0.15, {}, ecm::Execution::parallel); }, 5);
    report("zivot_andrews T=200 aic4", za_s, za_p, a == b);

    const ecm::Series s2 = random_walk(80, 11);
    const ecm::LagSelection gts{ecm::LagMethod::general_to_specific, 2, 0.10};
    const double lp_s = seconds([&] { a = ecm::lumsdaine_papell(s2, 0.1, gts, {}, ecm::Execution::serial); }, 1);
    const double lp_p = seconds([&] { b = ecm::lumsdaine_papell(s2, 0.1, gts, {}, ecm::Execution::parallel); }, 1);
    report("lumsdaine_papell T=80 gts2", lp_s, lp_p, a == b);

    const double cl_s = seconds(
        [&] { a = ecm::clemente(s2, ecm::ClementeVariant::innovational, 0.05, gts, {}, ecm::Execution::serial); }, 1);
    const double cl_p = seconds(
        [&] { b = ecm::clemente(s2, ecm::ClementeVariant::innovational, 0.05, gts, {}, ecm::Execution::parallel); }, 1);
    report("clemente_io T=80 gts2", cl_s, cl_p, a == b);

    ecm::TestRecipe adf;
    adf.family = ecm::TestFamily::adf;
    adf.deterministic = ecm::Deterministic::none;
    const auto dgp = ecm::default_null_dgp(adf, 500);
    std::vector<double> da, db;
    const double mc_s = seconds([&] { da = ecm::monte_carlo_draws(adf, dgp, 5000, 1, ecm::Execution::serial); }, 1);
    const double mc_p = seconds([&] { db = ecm::monte_carlo_draws(adf, dgp, 5000, 1, ecm::Execution::parallel); }, 1);
    report("monte_carlo adf T=500 5000 reps", mc_s, mc_p, da == db);

    ecm::TestRecipe joh;
    joh.family = ecm::TestFamily::johansen_trace;
    joh.dimension = 4;
    joh.hypothesis = 0;
    const auto jdgp = ecm::default_null_dgp(joh, 400);
    const double jo_s = seconds([&] { da = ecm::monte_carlo_draws(joh, jdgp, 1000, 2, ecm::Execution::serial); }, 1);
    const double jo_p = seconds([&] { db = ecm::monte_carlo_draws(joh, jdgp, 1000, 2, ecm::Execution::parallel); }, 1);
    report("monte_carlo johansen n=4 T=400", jo_s, jo_p, da == db);
    return 0;
}
