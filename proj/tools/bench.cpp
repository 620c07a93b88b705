// Compares the OpenMP kernels against their serial references and reports
// the scaling of the percolation methods on dense random graphs.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dagcons/consensus.hpp"
#include "dagcons/mdi.hpp"
#include "dagcons/separation.hpp"
#include "dagcons/transform.hpp"

using namespace dagcons;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

Dag random_dag(std::mt19937_64& rng, int n, double p) {
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(p);
    Dag d(n, default_node_names(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) d.add_arc(perm[i], perm[j]);
    return d;
}

NodeOrder random_order(std::mt19937_64& rng, int n) {
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return NodeOrder(std::move(perm));
}

template <typename F>
double time_call(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels fall back to serial.\n\n");
#endif

    std::mt19937_64 rng(20240915);

    std::printf("percolation scaling (dense random graphs, p = 0.5)\n");
    std::printf("%8s %14s %14s\n", "n", "method_b2 [s]", "g2h [s]");
    for (int n : {50, 100, 200, 400}) {
        Dag g = random_dag(rng, n, 0.5);
        NodeOrder alpha = random_order(rng, n);
        Dag h = method_b2(g, alpha, TieBreak::corrected());
        const double t_b2 = time_call([&] { method_b2(g, alpha, TieBreak::corrected()); });
        const double t_g2h = time_call([&] { g2h(g, h); });
        std::printf("%8d %14.4f %14.4f\n", n, t_b2, t_g2h);
    }

    std::printf("\nbatch separation queries (n = 40, p = 0.3, 200000 queries)\n");
    {
        const int n = 40;
        Dag g = random_dag(rng, n, 0.3);
        std::uniform_int_distribution<int> node(0, n - 1);
        std::vector<SeparationQuery> queries;
        while (queries.size() < 200000) {
            std::vector<char> used(n, 0);
            auto draw = [&](int count) {
                std::vector<NodeId> set;
                while (static_cast<int>(set.size()) < count) {
                    int v = node(rng);
                    if (!used[v]) {
                        used[v] = 1;
                        set.push_back(v);
                    }
                }
                return set;
            };
            SeparationQuery q;
            q.x = draw(1);
            q.y = draw(1);
            q.z = draw(static_cast<int>(rng() % 6));
            queries.push_back(std::move(q));
        }
        std::vector<char> serial, parallel;
        const double t_serial = time_call([&] { serial = d_separated_many_serial(g, queries); });
        const double t_parallel = time_call([&] { parallel = d_separated_many(g, queries); });
        std::printf("serial %.4f s, parallel %.4f s, speedup %.2fx, results %s\n", t_serial,
                    t_parallel, t_serial / t_parallel, serial == parallel ? "equal" : "DIFFER");
    }

    std::printf("\nexhaustive consensus (n = 5, three random inputs)\n");
    {
        const int n = 5;
        std::vector<Dag> dags;
        for (int i = 0; i < 3; ++i) dags.push_back(random_dag(rng, n, 0.4));
        ConsensusInstance inst(dags, CardinalityMap::uniform(n, 2));
        std::vector<ConsensusResult> serial, parallel;
        const double t_serial = time_call([&] { serial = exact_consensus_serial(inst); });
        const double t_parallel = time_call([&] { parallel = exact_consensus(inst); });
        const bool equal = serial.size() == parallel.size() &&
                           [&] {
                               for (std::size_t i = 0; i < serial.size(); ++i)
                                   if (!(serial[i].dag == parallel[i].dag)) return false;
                               return true;
                           }();
        std::printf("serial %.4f s, parallel %.4f s, speedup %.2fx, optima %zu, results %s\n",
                    t_serial, t_parallel, t_serial / t_parallel, serial.size(),
                    equal ? "equal" : "DIFFER");
    }

    std::printf("\nordering search, restart strategy (n = 9, m = 2, 32 restarts)\n");
    {
        const int n = 9;
        std::vector<Dag> dags;
        for (int i = 0; i < 2; ++i) dags.push_back(random_dag(rng, n, 0.4));
        ConsensusInstance inst(dags, CardinalityMap::uniform(n, 2));
        SearchConfig cfg;
        cfg.strategy = SearchConfig::Strategy::restarts;
        cfg.max_iters = 32;
        cfg.seed = 7;
        ConsensusResult serial{Dag(0, {}), 0, std::nullopt};
        ConsensusResult parallel{Dag(0, {}), 0, std::nullopt};
        const double t_serial = time_call([&] { serial = search_ordering_serial(inst, cfg); });
        const double t_parallel = time_call([&] { parallel = search_ordering(inst, cfg); });
        std::printf("serial %.4f s, parallel %.4f s, speedup %.2fx, params %llu, results %s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    static_cast<unsigned long long>(serial.params),
                    serial.dag == parallel.dag ? "equal" : "DIFFER");
    }
    return 0;
}
