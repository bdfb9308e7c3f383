// Benchmark comparing the serial reference scans against the OpenMP path.
// Both must produce identical reports; the table prints wall times and the
// match verdict so regressions in either speed or determinism are visible.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fcmetric/contraction.hpp"
#include "fcmetric/examples.hpp"
#include "fcmetric/report_json.hpp"
#include "fcmetric/space.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Row {
    std::string name;
    std::int64_t samples;
    double serial_s;
    double parallel_s;
    bool match;
};

template <class RunFn>
Row bench(const std::string& name, std::int64_t samples, RunFn&& run) {
    auto t0 = std::chrono::steady_clock::now();
    const std::string serial = run(fcm::ExecutionPolicy::serial);
    const double serial_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const std::string parallel = run(fcm::ExecutionPolicy::parallel);
    const double parallel_s = seconds_since(t0);
    return Row{name, samples, serial_s, parallel_s, serial == parallel};
}

} // namespace

int main(int argc, char** argv) {
    std::int64_t samples = 100000;
    if (argc > 1) samples = std::atoll(argv[1]);
    if (samples < 1) {
        std::fprintf(stderr, "usage: %s [n_samples]\n", argv[0]);
        return 2;
    }

    fcm::ExampleConfig config;
    config.family = "interval_m2";
    fcm::ExampleBundle bundle = fcm::build_example(config);
    const fcm::SpaceInstance& space = bundle.space;
    const fcm::ContractionSpec& contraction = *bundle.contraction;

    fcm::CheckParams params;
    params.n_samples = samples;
    params.seed = 1;

    Row rows[] = {
        bench("controlled_triangle", samples,
              [&](fcm::ExecutionPolicy policy) {
                  params.policy = policy;
                  return fcm::to_json(fcm::check_triangle(space, params)).dump();
              }),
        bench("order_chain", samples,
              [&](fcm::ExecutionPolicy policy) {
                  params.policy = policy;
                  return fcm::to_json(fcm::check_order(space, params)).dump();
              }),
        bench("contractive_inequality", samples,
              [&](fcm::ExecutionPolicy policy) {
                  params.policy = policy;
                  return fcm::to_json(
                             fcm::verify_contraction_inequality(space, contraction, params))
                      .dump();
              }),
    };

    std::printf("%-24s %10s %12s %12s %9s %s\n", "scan", "samples", "serial (s)",
                "parallel (s)", "speedup", "reports");
    bool all_match = true;
    for (const Row& row : rows) {
        all_match = all_match && row.match;
        std::printf("%-24s %10lld %12.4f %12.4f %8.2fx %s\n", row.name.c_str(),
                    static_cast<long long>(row.samples), row.serial_s, row.parallel_s,
                    row.parallel_s > 0 ? row.serial_s / row.parallel_s : 0.0,
                    row.match ? "identical" : "DIFFER");
    }
    if (!all_match) {
        std::fprintf(stderr, "parallel reports differ from the serial reference\n");
        return 1;
    }
    return 0;
}
