// Command-line front end: analyze / synthesize / simulate / check.
#include "monotrack/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace monotrack;

std::vector<Rat> parse_list(const std::string& csv) {
    std::vector<Rat> out;
    std::string cur;
    std::stringstream ss(csv);
    while (std::getline(ss, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(parse_rational(cur));
    }
    return out;
}

VecQ to_vec(const std::vector<Rat>& v) {
    VecQ r(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
    return r;
}

int run_analyze(const std::string& path, std::uint64_t seed) {
    auto sys = io::load_system(path);
    auto v = validate(sys);
    if (!v.ok()) {
        io::Json j;
        j["error"] = "standing assumptions violated";
        j["bd_full_column_rank"] = v.bd_full_column_rank;
        j["cd_full_row_rank"] = v.cd_full_row_rank;
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    auto rep = analyze(sys, seed);
    SolvabilityReport structural;
    if (rep.assumption1 && rep.assumption2 && rep.dim_v_star_g >= 0)
        structural = check_structural(sys, rep, seed);
    std::cout << io::structural_report_to_json(rep, structural).dump(2) << "\n";
    return 0;
}

int run_synthesize(const std::string& path, const std::string& modes_csv,
                   const std::string& invisible_csv, const std::string& force_csv,
                   std::uint64_t seed, const std::string& out_path) {
    auto sys = io::load_system(path);
    ModeSelection<Rat> modes;
    modes.visible = parse_list(modes_csv);
    modes.invisible_free = parse_list(invisible_csv);
    std::vector<int> force;
    for (const auto& r : parse_list(force_csv))
        force.push_back(static_cast<int>(to_double(r)));
    try {
        auto res = synthesize_auto(sys, modes, seed, force);
        io::Json j = io::feedback_to_json(res, sys.p());
        std::cout << j.dump(2) << "\n";
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << j.dump(2) << "\n";
        }
        return 0;
    } catch (const UnsolvableError& e) {
        io::Json j = io::solvability_to_json(e.report);
        j["error"] = "unsolvable";
        std::cout << j.dump(2) << "\n";
        return 2;
    }
}

int run_simulate(const std::string& path, const std::string& fpath, const std::string& ref_csv,
                 const std::string& x0_csv, double horizon, double dt,
                 std::optional<double> rate, const std::string& out_csv) {
    auto sys = io::load_system(path);
    auto fb = io::load_feedback(fpath);
    auto cl = closed_loop(sys, fb.F, to_vec(parse_list(ref_csv)));
    for (std::size_t i = 0; i < fb.visible_modes.size() && i < cl.component_modes.size(); ++i)
        cl.component_modes[i] = fb.visible_modes[i];
    VecD x0 = VecD::Zero(sys.n());
    if (!x0_csv.empty()) {
        auto vals = parse_list(x0_csv);
        if (static_cast<Eigen::Index>(vals.size()) != sys.n())
            throw std::invalid_argument("--x0 must have n entries");
        for (Eigen::Index i = 0; i < sys.n(); ++i) x0(i) = to_double(vals[static_cast<std::size_t>(i)]);
    }
    auto trace = simulate(cl, x0, horizon, dt);
    auto verdicts = check_monotone(trace, rate);
    if (!out_csv.empty()) io::write_trace_csv(out_csv, trace);
    io::Json j;
    j["verdicts"] = io::verdicts_to_json(verdicts);
    if (!out_csv.empty()) j["trace"] = out_csv;
    std::cout << j.dump(2) << "\n";
    for (const auto& v : verdicts)
        if (!v.passed()) return 3;
    return 0;
}

int run_check(const std::string& path, const std::string& fpath, const std::string& ref_csv,
              long trials, std::uint64_t seed, std::optional<double> rate, bool parallel) {
    auto sys = io::load_system(path);
    auto fb = io::load_feedback(fpath);
    auto cl = closed_loop(sys, fb.F, to_vec(parse_list(ref_csv)));
    for (std::size_t i = 0; i < fb.visible_modes.size() && i < cl.component_modes.size(); ++i)
        cl.component_modes[i] = fb.visible_modes[i];
    auto res = batch_check(cl, trials, seed, rate, parallel);
    std::cout << io::batch_to_json(res).dump(2) << "\n";
    return res.all_pass() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monotonic tracking synthesis for LTI MIMO plants"};
    app.require_subcommand(1);

    std::string sys_path, modes_csv, invisible_csv, force_csv, feedback_path, out_path;
    std::string ref_csv = "0", x0_csv;
    std::uint64_t seed = 0;
    double horizon = 0.0, dt = 0.0, rate = 0.0;
    bool rate_set = false, parallel = false;
    long trials = 100;

    auto* analyze_cmd = app.add_subcommand("analyze", "structural analysis and solvability");
    analyze_cmd->add_option("system", sys_path, "system JSON file")->required();
    analyze_cmd->add_option("--seed", seed, "randomization seed");

    auto* synth = app.add_subcommand("synthesize", "construct a monotonic-tracking feedback");
    synth->add_option("system", sys_path)->required();
    synth->add_option("--modes", modes_csv, "visible modes, one per output")->required();
    synth->add_option("--invisible", invisible_csv, "invisible modes for the R* part");
    synth->add_option("--force-visible", force_csv, "outputs whose columns must be retained");
    synth->add_option("--seed", seed);
    synth->add_option("--out", out_path, "write the feedback JSON here too");

    auto* sim = app.add_subcommand("simulate", "simulate the closed loop and check monotonicity");
    sim->add_option("system", sys_path)->required();
    sim->add_option("--feedback", feedback_path)->required();
    sim->add_option("--reference", ref_csv, "step reference, comma separated");
    sim->add_option("--x0", x0_csv, "initial state (default 0)");
    sim->add_option("--horizon", horizon);
    sim->add_option("--dt", dt);
    sim->add_option("--rate", rate)->each([&](const std::string&) { rate_set = true; });
    sim->add_option("--out", out_path, "trace CSV path");

    auto* chk = app.add_subcommand("check", "batch random-start verification");
    chk->add_option("system", sys_path)->required();
    chk->add_option("--feedback", feedback_path)->required();
    chk->add_option("--reference", ref_csv);
    chk->add_option("--trials", trials);
    chk->add_option("--seed", seed);
    chk->add_option("--rate", rate)->each([&](const std::string&) { rate_set = true; });
    chk->add_flag("--parallel", parallel, "evaluate trials with OpenMP");

    CLI11_PARSE(app, argc, argv);

    std::optional<double> rate_opt;
    if (rate_set) rate_opt = rate;
    try {
        if (analyze_cmd->parsed()) return run_analyze(sys_path, seed);
        if (synth->parsed())
            return run_synthesize(sys_path, modes_csv, invisible_csv, force_csv, seed, out_path);
        if (sim->parsed())
            return run_simulate(sys_path, feedback_path, ref_csv, x0_csv, horizon, dt, rate_opt,
                                out_path);
        if (chk->parsed())
            return run_check(sys_path, feedback_path, ref_csv, trials, seed, rate_opt, parallel);
    } catch (const monotrack::UnsolvableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
