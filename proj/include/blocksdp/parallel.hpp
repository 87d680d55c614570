#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace blocksdp {

/// Serial runs are the reference path; parallel runs must reproduce them
/// bit for bit.
enum class Exec { serial, parallel };

/// Calls fn(i) for i in [0, count) and stores results by index, so output
/// order never depends on scheduling. The first exception (lowest index) is
/// rethrown after the loop.
template <class Result, class Fn>
std::vector<Result> map_indexed(std::size_t count, Exec exec, Fn&& fn) {
    std::vector<Result> out(count);
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<std::int64_t>(count);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace blocksdp
