// Timing comparison of the OpenMP kernels against the serial reference
// path: the per-generator face LPs, the oracle's subset enumeration, and a
// batch of gradient-flow runs. Results must agree exactly between the two
// paths; the benchmark asserts that as it goes.

#include <algorithm>
#include <chrono>
#include <optional>
#include <cstdio>
#include <vector>

#include "balfilt/chain.hpp"
#include "balfilt/flow.hpp"
#include "balfilt/parallel.hpp"
#include "balfilt/random_states.hpp"

using namespace balfilt;

namespace {

double seconds(auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel_time) {
    std::printf("%-24s serial %8.3fs   openmp %8.3fs   speedup %5.2fx\n", name, serial,
                parallel_time, parallel_time > 0 ? serial / parallel_time : 0.0);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", parallel::thread_count());

    // Face computation over a batch of random states.
    {
        RandomStates gen(7);
        std::vector<PolarisedState> states;
        for (int i = 0; i < 400; ++i) states.push_back(gen.next());
        std::vector<std::vector<std::size_t>> serial_out(states.size()),
            parallel_out(states.size());
        parallel::set_enabled(false);
        double ts = seconds([&] {
            for (std::size_t i = 0; i < states.size(); ++i)
                serial_out[i] = smallest_face(states[i].characters(), states[i].polarisation());
        });
        parallel::set_enabled(true);
        double tp = seconds([&] {
            parallel::for_each_index(states.size(), [&](std::size_t i) {
                parallel_out[i] = smallest_face(states[i].characters(), states[i].polarisation());
            });
        });
        if (serial_out != parallel_out) {
            std::printf("FACE BATCH MISMATCH\n");
            return 1;
        }
        report("face batch (400)", ts, tp);
    }

    // Subset enumeration of the oracle on a 12-character state.
    {
        RandomStates gen(11);
        std::vector<QVec> chars;
        while (chars.size() < 12) {
            QVec chi(3);
            bool zero = true;
            for (auto& x : chi) {
                x = Rational(gen.pick(-3, 3));
                if (x != 0) zero = false;
            }
            if (!zero && std::find(chars.begin(), chars.end(), chi) == chars.end())
                chars.push_back(chi);
        }
        PolarisedState s(3, chars, zero_vector(3), InnerProduct(gen.gram(3)));
        parallel::set_enabled(false);
        std::optional<BalancedResult> a;
        double ts = seconds([&] { a = oracle_balanced(s, 12); });
        parallel::set_enabled(true);
        std::optional<BalancedResult> b;
        double tp = seconds([&] { b = oracle_balanced(s, 12); });
        if (a->lambda_intrinsic != b->lambda_intrinsic) {
            std::printf("ORACLE MISMATCH\n");
            return 1;
        }
        report("oracle enumeration", ts, tp);
    }

    // Flow batch on the two-character rank-2 state.
    {
        PolarisedState s(2, {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}},
                         zero_vector(2), InnerProduct::standard(2));
        auto prediction = flow::prediction_from(iterated_balanced(s));
        std::vector<std::vector<double>> starts;
        for (int i = 0; i < 16; ++i) starts.push_back({0.1 * i, -0.05 * i});
        parallel::set_enabled(false);
        std::vector<flow::FlowResult> ra, rb;
        double ts = seconds([&] {
            ra = flow::run_batch(s, starts, prediction, 2.0, 400.0, 1e-9, 1e-11, {});
        });
        parallel::set_enabled(true);
        double tp = seconds([&] {
            rb = flow::run_batch(s, starts, prediction, 2.0, 400.0, 1e-9, 1e-11, {});
        });
        for (std::size_t i = 0; i < ra.size(); ++i)
            if (ra[i].trajectory != rb[i].trajectory) {
                std::printf("FLOW MISMATCH\n");
                return 1;
            }
        report("flow batch (16 starts)", ts, tp);
    }
    return 0;
}
