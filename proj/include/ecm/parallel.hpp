#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <utility>
#include <vector>

namespace ecm {

/// Kernels below come in a serial reference form and an OpenMP form. Both
/// evaluate every index independently and reduce in index order, so they
/// return bitwise-identical results for any thread count.
enum class Execution { serial, parallel };

template <class R>
struct GridMinimum {
    std::size_t index = 0;
    R result;
};

/// Serial reference argmin over candidates 0..n-1. `eval(i)` returns
/// std::optional<R> (nullopt skips the candidate) and R exposes `.statistic`.
/// Ties keep the earliest index.
template <class R, class Eval>
std::optional<GridMinimum<R>> grid_argmin_serial(std::size_t n, Eval&& eval) {
    std::optional<GridMinimum<R>> best;
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<R> r = eval(i);
        if (!r) continue;
        if (!best || r->statistic < best->result.statistic) best = GridMinimum<R>{i, std::move(*r)};
    }
    return best;
}

template <class R, class Eval>
std::optional<GridMinimum<R>> grid_argmin_parallel(std::size_t n, Eval&& eval) {
    std::vector<std::optional<R>> results(n);
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < count; ++i) {
        try {
            results[static_cast<std::size_t>(i)] = eval(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    std::optional<GridMinimum<R>> best;
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        if (!results[i]) continue;
        if (!best || results[i]->statistic < best->result.statistic) best = GridMinimum<R>{i, std::move(*results[i])};
    }
    return best;
}

template <class R, class Eval>
std::optional<GridMinimum<R>> grid_argmin(Execution exec, std::size_t n, Eval&& eval) {
    if (exec == Execution::parallel) return grid_argmin_parallel<R>(n, std::forward<Eval>(eval));
    return grid_argmin_serial<R>(n, std::forward<Eval>(eval));
}

/// out[i] = fn(i) for i in 0..n-1.
template <class Fn>
std::vector<double> replicate_map_serial(std::size_t n, Fn&& fn) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

template <class Fn>
std::vector<double> replicate_map_parallel(std::size_t n, Fn&& fn) {
    std::vector<double> out(n);
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

template <class Fn>
std::vector<double> replicate_map(Execution exec, std::size_t n, Fn&& fn) {
    if (exec == Execution::parallel) return replicate_map_parallel(n, std::forward<Fn>(fn));
    return replicate_map_serial(n, std::forward<Fn>(fn));
}

/// Number of OpenMP worker threads; 1 when built without OpenMP.
int worker_count();
void set_worker_count(int n);

}  // namespace ecm
