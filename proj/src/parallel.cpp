#include "hk/parallel.hpp"

#include <map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hk::par {

Config& config() {
    static Config cfg;
    return cfg;
}

void set_jobs(int jobs) {
    if (jobs == 1) {
        config().enabled = false;
        return;
    }
    config().enabled = true;
#ifdef _OPENMP
    if (jobs > 1) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Partition the left factor's terms across threads; each thread accumulates
// into a private map, then the maps are merged. Arithmetic is exact, so the
// result is independent of the partition.
Poly mul_openmp(const Poly& a, const Poly& b) {
    require_same_chart(a.chart(), b.chart());
    const Chart& chart = *a.chart();

    std::vector<std::pair<const Monomial*, const Rational*>> left;
    left.reserve(a.term_count());
    for (const auto& [m, c] : a.terms()) left.emplace_back(&m, &c);

    int nthreads = max_threads();
    std::vector<std::map<Monomial, Rational>> partial(static_cast<size_t>(nthreads));

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
    {
        int tid = omp_get_thread_num();
        auto& mine = partial[static_cast<size_t>(tid)];
        Monomial merged;
#pragma omp for schedule(static)
        for (long idx = 0; idx < static_cast<long>(left.size()); ++idx) {
            const auto& [ma, ca] = left[static_cast<size_t>(idx)];
            for (const auto& [mb, cb] : b.terms()) {
                int sign = mono_mul(chart, *ma, mb, merged);
                if (!sign) continue;
                Rational c = *ca * cb;
                if (sign < 0) c = -c;
                auto [it, inserted] = mine.emplace(merged, c);
                if (!inserted) it->second += c;
            }
        }
    }
#else
    {
        auto& mine = partial[0];
        Monomial merged;
        for (const auto& [ma, ca] : left) {
            for (const auto& [mb, cb] : b.terms()) {
                int sign = mono_mul(chart, *ma, mb, merged);
                if (!sign) continue;
                Rational c = *ca * cb;
                if (sign < 0) c = -c;
                auto [it, inserted] = mine.emplace(merged, c);
                if (!inserted) it->second += c;
            }
        }
    }
#endif

    Poly r(a.chart());
    for (auto& mp : partial)
        for (auto& [m, c] : mp) r.add_term(m, c);
    return r;
}

} // namespace hk::par
