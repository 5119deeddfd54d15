// Serial vs OpenMP timing for the batch layers (sweep + random-start checks).
#include "monotrack/io.hpp"

#include <chrono>
#include <iostream>

using namespace monotrack;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

LtiSystem<Rat> esaggiunto2() {
    LtiSystem<Rat> sys;
    sys.A = MatQ(3, 3);
    sys.A << -10, 0, 8, 0, -9, 0, 1, 3, 10;
    sys.B = MatQ(3, 2);
    sys.B << 0, 0, 0, 0, -8, 0;
    sys.C = MatQ(2, 3);
    sys.C << -3, 0, 8, 9, -5, 6;
    sys.D = MatQ(2, 2);
    sys.D << 0, 0, 0, 4;
    return sys;
}

} // namespace

int main(int argc, char** argv) {
    long grid_size = argc > 1 ? std::atol(argv[1]) : 64;
    long trials = argc > 2 ? std::atol(argv[2]) : 400;

    auto sys = esaggiunto2();
    Prng rng(17);
    std::vector<std::vector<Rat>> grid;
    for (long g = 0; g < grid_size; ++g) {
        Rat l1 = rng.rational_in(-12, -1, 8);
        Rat l2 = rng.rational_in(-12, -1, 8);
        grid.push_back({l1, l2});
    }

    auto t0 = std::chrono::steady_clock::now();
    auto serial = structural_sweep(sys, grid, 7, false);
    auto t1 = std::chrono::steady_clock::now();
    auto parallel = structural_sweep(sys, grid, 7, true);
    auto t2 = std::chrono::steady_clock::now();

    long ok = 0;
    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (serial[i].status == SweepRow<Rat>::Status::Success) ++ok;
        identical = identical && serial[i].status == parallel[i].status &&
                    (serial[i].status != SweepRow<Rat>::Status::Success ||
                     serial[i].F == parallel[i].F);
    }
    std::cout << "sweep: " << grid_size << " grid points, " << ok << " succeeded\n";
    std::cout << "  serial   " << seconds(t0, t1) << " s\n";
    std::cout << "  openmp   " << seconds(t1, t2) << " s\n";
    std::cout << "  identical results: " << (identical ? "yes" : "NO") << "\n";

    ModeSelection<Rat> modes;
    modes.visible = {Rat(-2), Rat(-2)};
    auto res = synthesize_auto(sys, modes, 3);
    VecQ ref(2);
    ref << 1, 1;
    auto cl = closed_loop(sys, res.F, ref);
    for (const auto& po : res.per_output)
        cl.component_modes[static_cast<std::size_t>(po.output - 1)] =
            po.visible ? std::optional<double>(to_double(po.mode)) : std::nullopt;

    auto t3 = std::chrono::steady_clock::now();
    auto bs = batch_check(cl, trials, 11, std::nullopt, false);
    auto t4 = std::chrono::steady_clock::now();
    auto bp = batch_check(cl, trials, 11, std::nullopt, true);
    auto t5 = std::chrono::steady_clock::now();

    bool same = bs.trials == bp.trials && bs.components.size() == bp.components.size();
    for (std::size_t c = 0; same && c < bs.components.size(); ++c)
        same = bs.components[c].pass == bp.components[c].pass &&
               bs.components[c].fail == bp.components[c].fail &&
               bs.components[c].worst_fit_residual == bp.components[c].worst_fit_residual;
    std::cout << "batch check: " << trials << " trials, all_pass=" << bs.all_pass() << "\n";
    std::cout << "  serial   " << seconds(t3, t4) << " s\n";
    std::cout << "  openmp   " << seconds(t4, t5) << " s\n";
    std::cout << "  identical results: " << (same ? "yes" : "NO") << "\n";
    return identical && same ? 0 : 1;
}
