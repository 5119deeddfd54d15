#include "monotrack/io.hpp"

namespace monotrack::io {

namespace {

Json zero_to_json(const InvariantZero& z) {
    Json j;
    if (z.exact) j["value"] = rational_str(*z.exact);
    j["re"] = z.value.real();
    j["im"] = z.value.imag();
    j["geometric_multiplicity"] = z.geometric_multiplicity;
    j["algebraic_multiplicity"] = z.algebraic_multiplicity;
    j["minimum_phase"] = z.minimum_phase;
    return j;
}

} // namespace

Json solvability_to_json(const SolvabilityReport& rep) {
    Json j;
    j["solvable"] = rep.solvable;
    j["problem"] = rep.fixed_modes ? "fixed-modes" : "structural";
    Json fails = Json::array();
    for (const auto& f : rep.failed_subsets) {
        Json e;
        e["subset"] = f.subset;
        e["achieved"] = f.achieved;
        e["required"] = f.required;
        fails.push_back(e);
    }
    j["failed_subsets"] = fails;
    return j;
}

Json structural_report_to_json(const StructuralReport<Rat>& rep,
                               const SolvabilityReport& structural) {
    Json j;
    j["normal_rank"] = rep.normal_rank;
    j["right_invertible"] = rep.right_invertible;
    j["stabilizable"] = rep.stabilizable;
    Json unc = Json::array();
    for (const auto& z : rep.uncontrollable_modes) {
        Json e;
        e["re"] = z.real();
        e["im"] = z.imag();
        unc.push_back(e);
    }
    j["uncontrollable_modes"] = unc;
    Json zeros = Json::array();
    for (const auto& z : rep.zeros) zeros.push_back(zero_to_json(z));
    j["zeros"] = zeros;
    j["assumption1"] = rep.assumption1;
    j["assumption2"] = rep.assumption2;
    j["dim_r_star"] = rep.dim_r_star;
    j["dim_v_star_g"] = rep.dim_v_star_g;
    j["structural"] = solvability_to_json(structural);
    return j;
}

Json verdicts_to_json(const std::vector<ComponentVerdict>& verdicts) {
    Json arr = Json::array();
    for (std::size_t c = 0; c < verdicts.size(); ++c) {
        const auto& v = verdicts[c];
        Json e;
        e["component"] = c + 1;
        e["status"] = v.status == ComponentVerdict::Status::Pass ? "PASS"
                      : v.status == ComponentVerdict::Status::PassInstantaneous
                          ? "PASS-instantaneous"
                          : "FAIL";
        e["monotone"] = v.monotone;
        e["envelope_ok"] = v.envelope_ok;
        e["fit_residual"] = v.fit_residual;
        e["gamma"] = v.gamma;
        e["mode"] = v.mode_used;
        arr.push_back(e);
    }
    return arr;
}

Json batch_to_json(const BatchResult& res) {
    Json j;
    j["trials"] = res.trials;
    Json comps = Json::array();
    for (std::size_t c = 0; c < res.components.size(); ++c) {
        const auto& agg = res.components[c];
        Json e;
        e["component"] = c + 1;
        e["pass"] = agg.pass;
        e["instantaneous"] = agg.instantaneous;
        e["fail"] = agg.fail;
        e["worst_fit_residual"] = agg.worst_fit_residual;
        e["envelope_violations"] = agg.envelope_violations;
        comps.push_back(e);
    }
    j["components"] = comps;
    j["all_pass"] = res.all_pass();
    return j;
}

} // namespace monotrack::io
