// Benchmark comparing the serial reference kernels with their OpenMP
// counterparts on identical workloads.  Verifies that both modes agree
// before reporting timings.

#include "boolalg/amalgam.hpp"
#include "boolalg/commute.hpp"
#include "boolalg/cube.hpp"
#include "boolalg/functors.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace boolalg;

namespace {

double seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

template <typename F> double timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return seconds(start);
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial kernel\n");
#endif

    {
        // Chain-constrained overlap system: adjacent pairs share a 3-atom
        // core, the closing pair a 30-atom one, every other pair is free.
        // The search tree stays wide until the last level prunes it.
        std::mt19937 rng(7);
        OverlapSystem sys;
        int n = 6, atoms = 30;
        for (int i = 0; i < n; ++i)
            sys.atomCounts.push_back(atoms);
        auto surjection = [&](int onto) {
            std::vector<int> map(static_cast<size_t>(atoms));
            for (int a = 0; a < atoms; ++a)
                map[static_cast<size_t>(a)] = a < onto ? a : static_cast<int>(rng() % onto);
            return map;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int inter = 1;
                if (j == i + 1)
                    inter = 3;
                if (i == 0 && j == n - 1)
                    inter = atoms;
                sys.pairs.push_back({i, j, inter, surjection(inter), surjection(inter)});
            }
        std::vector<CompatibleTuple> ts, tp;
        double s = timed([&] { ts = compatible_tuples(sys, Exec::Serial); });
        double p = timed([&] { tp = compatible_tuples(sys, Exec::Parallel); });
        if (ts != tp) {
            std::fprintf(stderr, "tuple kernels disagree\n");
            return 1;
        }
        std::printf("  (%zu compatible tuples)\n", ts.size());
        report("compatible-tuples (6 x 30 atoms)", s, p);
    }

    {
        // Corner-tuple sweep over the symmetric square of a projection cube
        // with six-coordinate index sets.
        FinCube cube = projection_cube({{0, 1, 2, 3, 4, 5},
                                        {2, 3, 4, 5, 6, 7},
                                        {4, 5, 6, 7, 0, 1}});
        FinCube img = apply_functor(FunctorId::sp(2), cube);
        CommutativityReport rs, rp;
        double s = timed([&] { rs = n_commutativity_report(img, Exec::Serial); });
        double p = timed([&] { rp = n_commutativity_report(img, Exec::Parallel); });
        if (rs.value != rp.value || rs.counterexample != rp.counterexample) {
            std::fprintf(stderr, "cube kernels disagree\n");
            return 1;
        }
        report("cube commutativity (sp2 image)", s, p);
    }

    for (FunctorId f : {FunctorId::sp(3), FunctorId::sp(4)}) {
        // Candidate sweep of the algebra search, dominated by the per-triple
        // image predicates.
        AlgebraSearchResult rs, rp;
        double s =
            timed([&] { rs = search_algebra_counterexample(f, 5, Exec::Serial); });
        double p =
            timed([&] { rp = search_algebra_counterexample(f, 5, Exec::Parallel); });
        bool same = rs.found == rp.found && rs.failingTuple == rp.failingTuple;
        for (int i = 0; i < 3 && same; ++i)
            same = rs.triple[static_cast<size_t>(i)] == rp.triple[static_cast<size_t>(i)];
        if (!same) {
            std::fprintf(stderr, "search kernels disagree\n");
            return 1;
        }
        report(("algebra search (" + f.name() + ", ground 5)").c_str(), s, p);
    }

    return 0;
}
