// Timing comparison of the serial reference sweep against the OpenMP
// kernel on the same characteristic-function grid. Both paths must agree
// bitwise; the test suite asserts that, this target reports throughput.
//
// Usage: bench_scan [problem.json] [lmax] [step] [h]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slret/charfn.hpp"
#include "slret/problem.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

slret::problem::ProblemSpec builtin_problem() {
    return slret::problem::parse_problem_json(R"json({
      "interval": {"a": 0.0, "c": 1.0, "b": 2.0},
      "p": {"p1": 1.0, "p2": 1.0},
      "q": "0.3*cos(x)",
      "delay": "0.3*min(pos(x - 0), pos(1 - x)) + 0.3*min(pos(x - 1), pos(2 - x))",
      "boundary": {
        "delta":       [[1.0, 0.0], [1.0, 0.0]],
        "delta_tilde": [[0.2, 1.0], [0.2, 1.0]]
      },
      "transmission": {
        "gamma10": {"plus": 1.0, "minus": -1.0},
        "gamma2":       {"plus": [0.0, 1.0], "minus": [0.0, -1.0]},
        "gamma2_tilde": {"plus": [0.0, 0.0], "minus": [0.1, 1.0]}
      }
    })json", "builtin");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "";
    const double lmax = argc > 2 ? std::atof(argv[2]) : 30.0;
    const double step = argc > 3 ? std::atof(argv[3]) : 0.05;
    const double h = argc > 4 ? std::atof(argv[4]) : 2e-3;

    const auto spec = path.empty() ? builtin_problem() : slret::problem::load(path);
    const auto vp = slret::problem::validate(spec);

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif
    std::printf("sweep: lambda in [0.1, %g], step %g, h %g\n", lmax, step, h);

    const double t0 = now_seconds();
    const auto serial = slret::charfn::scan_serial(vp, 0.1, lmax, step, h);
    const double t1 = now_seconds();
    const auto parallel = slret::charfn::scan(vp, 0.1, lmax, step, h, true);
    const double t2 = now_seconds();

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        const bool both_nan = std::isnan(serial[i].xi) && std::isnan(parallel[i].xi);
        identical = serial[i].lambda == parallel[i].lambda &&
                    (both_nan || serial[i].xi == parallel[i].xi) &&
                    serial[i].near_singular == parallel[i].near_singular;
    }

    const double ts = t1 - t0;
    const double tp = t2 - t1;
    std::printf("samples: %zu\n", serial.size());
    std::printf("serial reference: %.3f s  (%.1f samples/s)\n", ts, serial.size() / ts);
    std::printf("openmp kernel:    %.3f s  (%.1f samples/s)\n", tp, parallel.size() / tp);
    std::printf("speedup: %.2fx\n", ts / tp);
    std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
