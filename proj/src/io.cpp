#include "monotrack/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace monotrack::io {

namespace {

Rat entry_to_rational(const Json& v, const std::string& name, Eigen::Index i, Eigen::Index j) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rat(v.get<long long>());
        if (v.is_number_float()) return Rat(v.get<double>());
    } catch (const std::exception&) {
    }
    std::ostringstream os;
    os << name << "[" << i + 1 << "][" << j + 1 << "]: cannot parse matrix entry";
    throw std::invalid_argument(os.str());
}

MatQ parse_matrix(const Json& j, const std::string& name) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument(name + ": expected an array of arrays");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    MatQ M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_array() ||
            static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != cols) {
            std::ostringstream os;
            os << name << "[" << i + 1 << "]: ragged row (expected " << cols << " columns)";
            throw std::invalid_argument(os.str());
        }
        for (Eigen::Index c = 0; c < cols; ++c)
            M(i, c) = entry_to_rational(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)],
                                        name, i, c);
    }
    return M;
}

Json matrix_to_json(const MatQ& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(rational_str(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return j;
}

} // namespace

LtiSystem<Rat> load_system(const std::string& path) {
    Json j = load_json(path);
    LtiSystem<Rat> sys;
    std::string dom = j.value("domain", "continuous");
    if (dom == "continuous") sys.domain = TimeDomain::Continuous;
    else if (dom == "discrete") sys.domain = TimeDomain::Discrete;
    else throw std::invalid_argument("domain must be 'continuous' or 'discrete'");
    for (const char* key : {"A", "B", "C", "D"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("missing matrix ") + key);
    sys.A = parse_matrix(j["A"], "A");
    sys.B = parse_matrix(j["B"], "B");
    sys.C = parse_matrix(j["C"], "C");
    sys.D = parse_matrix(j["D"], "D");
    auto v = validate(sys);
    if (!v.dims_ok) throw std::invalid_argument("system matrices are dimensionally inconsistent");
    return sys;
}

LtiSystem<double> load_system_double(const std::string& path) {
    auto q = load_system(path);
    return {to_double_mat(q.A), to_double_mat(q.B), to_double_mat(q.C), to_double_mat(q.D),
            q.domain};
}

Json feedback_to_json(const SynthesisResult<Rat>& res, Eigen::Index p) {
    Json j;
    j["F"] = matrix_to_json(res.F);
    Json modes;
    Json visible = Json::array();
    for (Eigen::Index out = 1; out <= p; ++out) {
        Json entry;
        entry["output"] = out;
        const auto& po = res.per_output[static_cast<std::size_t>(out - 1)];
        entry["visible"] = po.visible;
        if (po.visible) {
            entry["mode"] = rational_str(po.mode);
            entry["beta"] = rational_str(po.beta);
        }
        visible.push_back(entry);
    }
    modes["visible"] = visible;
    Json invisible = Json::array();
    for (const auto& lab : res.retained_labels)
        if (lab.owner == 0) invisible.push_back(rational_str(lab.re));
    modes["invisible"] = invisible;
    j["modes"] = modes;
    Json spectrum = Json::array();
    for (const auto& lab : res.retained_labels) spectrum.push_back(rational_str(lab.re));
    j["spectrum"] = spectrum;
    Json psi = Json::array();
    for (int c : res.psi) psi.push_back(c);
    j["psi"] = psi;
    j["seed"] = res.seed;
    return j;
}

FeedbackFile feedback_from_json(const Json& j) {
    FeedbackFile f;
    f.F = parse_matrix(j.at("F"), "F");
    f.seed = j.value("seed", 0);
    if (j.contains("modes")) {
        const auto& m = j["modes"];
        if (m.contains("visible"))
            for (const auto& e : m["visible"]) {
                if (e.value("visible", false))
                    f.visible_modes.push_back(to_double(parse_rational(e["mode"].get<std::string>())));
                else
                    f.visible_modes.push_back(std::nullopt);
            }
        if (m.contains("invisible"))
            for (const auto& e : m["invisible"])
                f.invisible_modes.push_back(to_double(parse_rational(e.get<std::string>())));
    }
    return f;
}

FeedbackFile load_feedback(const std::string& path) { return feedback_from_json(load_json(path)); }

void write_trace_csv(const std::string& path, const SimulationTrace& trace) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    const Eigen::Index n = trace.xi.empty() ? 0 : trace.xi[0].size();
    const Eigen::Index p = trace.eps.empty() ? 0 : trace.eps[0].size();
    std::fputs("t", out);
    for (Eigen::Index i = 1; i <= n; ++i) std::fprintf(out, ",xi_%lld", static_cast<long long>(i));
    for (Eigen::Index i = 1; i <= p; ++i) std::fprintf(out, ",eps_%lld", static_cast<long long>(i));
    std::fputc('\n', out);
    for (std::size_t k = 0; k < trace.xi.size(); ++k) {
        std::fprintf(out, "%.17g", trace.times(static_cast<Eigen::Index>(k)));
        for (Eigen::Index i = 0; i < n; ++i) std::fprintf(out, ",%.17g", trace.xi[k](i));
        for (Eigen::Index i = 0; i < p; ++i) std::fprintf(out, ",%.17g", trace.eps[k](i));
        std::fputc('\n', out);
    }
    std::fclose(out);
}

} // namespace monotrack::io
