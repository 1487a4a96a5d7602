// Copyright 2026 The ppsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compares the serial reference demodulation kernels against the OpenMP
// path on growing problem sizes and checks that both produce identical
// output.

#include <chrono>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ppsq/demod.hpp"
#include "ppsq/sequences.hpp"
#include "ppsq/states.hpp"

using namespace ppsq;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_of(int trials, F&& body) {
    double best = 1e300;
    for (int t = 0; t < trials; ++t) {
        const auto start = Clock::now();
        body();
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        best = std::min(best, ms);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP demodulation benchmark"};
    std::vector<int> degrees{3, 4};
    int trials = 3;
    app.add_option("--degree", degrees, "sequence-set degrees to benchmark");
    app.add_option("--trials", trials, "trials per measurement (best is reported)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both paths run serially\n";
#endif
    std::cout << std::left << std::setw(10) << "kernel" << std::setw(8) << "s" << std::setw(8)
              << "fields" << std::setw(8) << "N" << std::setw(14) << "serial ms" << std::setw(14)
              << "openmp ms" << std::setw(10) << "speedup" << "\n";

    for (int degree : degrees) {
        const SequenceSet set = build_sequence_set(degree);
        const std::size_t n_fields = set.usable_count();
        const FieldEnsemble ensemble = prepare_product(n_fields, set);

        std::vector<const PhaseSequence*> references;
        for (std::size_t j = 1; j < set.size(); ++j) references.push_back(&set.at(j));

        std::vector<Complex> s0, s1, p0, p1;
        const double serial_ms = best_of(trials, [&] {
            detail::correlation_grid_serial(ensemble.fields, references, s0, s1);
        });
        const double parallel_ms = best_of(trials, [&] {
            detail::correlation_grid_parallel(ensemble.fields, references, p0, p1);
        });
        if (s0 != p0 || s1 != p1) {
            std::cerr << "kernel outputs differ at degree " << degree << "\n";
            return 1;
        }
        std::cout << std::left << std::setw(10) << "demod" << std::setw(8) << degree
                  << std::setw(8) << n_fields << std::setw(8) << set.slots() << std::setw(14)
                  << serial_ms << std::setw(14) << parallel_ms << std::setw(10)
                  << serial_ms / parallel_ms << "\n";

        PropertyReport serial_report, parallel_report;
        const double vs = best_of(trials, [&] {
            serial_report = verify_set_properties(set, {.parallel = false});
        });
        const double vp = best_of(trials, [&] {
            parallel_report = verify_set_properties(set, {.parallel = true});
        });
        if (serial_report.worst_complex_residual != parallel_report.worst_complex_residual) {
            std::cerr << "property reports differ at degree " << degree << "\n";
            return 1;
        }
        std::cout << std::left << std::setw(10) << "verify" << std::setw(8) << degree
                  << std::setw(8) << set.size() << std::setw(8) << set.slots() << std::setw(14)
                  << vs << std::setw(14) << vp << std::setw(10) << vs / vp << "\n";
    }
    return 0;
}
