// Compare the serial reference paths against the OpenMP ones on the two
// parallel kernels: the box-frontier verifier and the oracle grid search.
#include <chrono>
#include <cstdio>

#include "cohn/certificate.hpp"
#include "cohn/oracle.hpp"
#include "cohn/verifier.hpp"

using namespace cohn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_verifier(int workers) {
    SignClaim claim{FunctionId::g, Sign::positive,
                    Box{Interval(1.4, 1.6), Interval(1.05, 1.35)}, 0.0};
    VerifyConfig cfg;
    cfg.max_depth = 40;
    cfg.workers = workers;

    auto t0 = Clock::now();
    SignCertificate cert = workers == 1 ? prove_sign_serial(claim, cfg)
                                        : prove_sign(claim, cfg);
    double dt = seconds_since(t0);
    std::printf("verifier  workers=%d  %8.3fs  boxes=%zu evals=%lld status=%s\n",
                workers, dt, cert.boxes.size(),
                static_cast<long long>(cert.evaluations),
                cert.status == Status::proven ? "proven" : "not proven");
}

void bench_oracle(bool parallel) {
    oracle::OracleConfig cfg;
    cfg.parallel = parallel;
    cfg.grid_n = 2048;
    auto t0 = Clock::now();
    double acc = 0.0;
    for (double p : {1.3, 1.9, 2.6, 4.0}) acc += oracle::min_parallelogram_area(p, cfg);
    double dt = seconds_since(t0);
    std::printf("oracle    %s  %8.3fs  (checksum %.12f)\n",
                parallel ? "parallel" : "serial  ", dt, acc);
}

} // namespace

int main() {
    std::printf("-- box-frontier sign verification --\n");
    SignCertificate reference;
    for (int workers : {1, 2, 4, 8}) bench_verifier(workers);

    // determinism spot check: serial and 8-worker certificates must match
    SignClaim claim{FunctionId::g, Sign::positive,
                    Box{Interval(1.45, 1.55), Interval(1.1, 1.3)}, 0.0};
    VerifyConfig one, eight;
    one.workers = 1;
    eight.workers = 8;
    bool same = certificate_to_json(prove_sign_serial(claim, one)) ==
                certificate_to_json(prove_sign(claim, eight));
    std::printf("certificates identical across worker counts: %s\n",
                same ? "yes" : "NO");

    std::printf("-- oracle parallelogram grid --\n");
    bench_oracle(false);
    bench_oracle(true);
    return same ? 0 : 1;
}
