// Compares the serial and OpenMP polynomial-product kernels on growing
// workloads and checks that they produce identical results.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hk/chart.hpp"
#include "hk/parallel.hpp"
#include "hk/poly.hpp"

using namespace hk;
using Clock = std::chrono::steady_clock;

namespace {

Poly random_poly(std::mt19937& g, const ChartPtr& ch, int terms, int emax) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    Poly p(ch);
    while (static_cast<int>(p.term_count()) < terms) {
        Monomial m;
        m.e.assign(static_cast<size_t>(ch->size()), 0);
        for (int i = 0; i < ch->size(); ++i) {
            const auto& v = ch->var(i);
            int e = v.parity == 1 ? std::uniform_int_distribution<int>(0, 1)(g)
                                  : std::uniform_int_distribution<int>(0, emax)(g);
            m.e[static_cast<size_t>(i)] = static_cast<int16_t>(e);
        }
        int c = coeff(g);
        if (c) p.add_term(m, c);
    }
    return p;
}

double time_ms(const Poly& a, const Poly& b, Poly (*kernel)(const Poly&, const Poly&), Poly& out) {
    auto t0 = Clock::now();
    out = kernel(a, b);
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int jobs = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--jobs" && i + 1 < argc) jobs = std::atoi(argv[++i]);
    }
    if (jobs > 0) par::set_jobs(jobs);

    auto ch = Chart::create("bench", 1,
                            {{"a", 0, {0}, false},
                             {"b", 0, {0}, false},
                             {"c", 0, {0}, false},
                             {"d", 0, {0}, false},
                             {"p", 1, {0}, false},
                             {"q", 1, {0}, false},
                             {"r", 1, {0}, false},
                             {"s", 1, {0}, false}});

    std::printf("threads available: %d\n", par::max_threads());
    std::printf("%8s %12s %12s %8s %8s\n", "terms", "serial(ms)", "openmp(ms)", "speedup",
                "match");

    std::mt19937 g(12345u);
    for (int terms : {50, 100, 200, 400, 800}) {
        Poly a = random_poly(g, ch, terms, 6);
        Poly b = random_poly(g, ch, terms, 6);
        Poly rs, rp;
        double ts = time_ms(a, b, &mul_serial, rs);
        double tp = time_ms(a, b, &par::mul_openmp, rp);
        bool ok = rs == rp;
        std::printf("%8d %12.2f %12.2f %8.2f %8s\n", terms, ts, tp, tp > 0 ? ts / tp : 0.0,
                    ok ? "yes" : "NO");
        if (!ok) return 1;
    }
    return 0;
}
