#include "pdti/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pdti {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json tensor_to_json(const DenseTensor& x) {
    nlohmann::json j;
    j["modes"] = x.shape().modes();
    std::vector<double> re, im;
    re.reserve(x.entries().size());
    im.reserve(x.entries().size());
    for (const Complex& v : x.entries()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

DenseTensor tensor_from_json(const nlohmann::json& j) {
    const std::vector<std::size_t> modes = j.at("modes").get<std::vector<std::size_t>>();
    const std::vector<double> re = j.at("re").get<std::vector<double>>();
    const std::vector<double> im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size())
        throw ParameterError("tensor_from_json: re/im length mismatch");
    Shape shape(modes);
    if (re.size() != shape.total() * shape.total())
        throw DimensionError("tensor_from_json: entry count must equal total^2");
    std::vector<Complex> entries(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) entries[k] = Complex(re[k], im[k]);
    return DenseTensor(shape, std::move(entries));
}

DenseTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("load_tensor: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return tensor_from_json(j);
}

void save_tensor(const DenseTensor& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParameterError("save_tensor: cannot open " + path);
    out << tensor_to_json(x).dump(2) << "\n";
}

nlohmann::json bound_record_json(const GFunction& g, const BoundResult& r) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["label"] = g.label();
    j["params"] = g.params();
    j["integrable"] = r.integrable;
    if (r.integrable) {
        j["l2_g"] = r.l2_g;
        j["l2_gprime"] = r.l2_gprime;
        j["c_star"] = r.c_star;
        j["bound"] = r.value;
        j["quadrature_error_estimate"] = r.quadrature_error_estimate;
    } else {
        j["bound"] = "infinite";
        j["vacuous"] = true;
    }
    return j;
}

nlohmann::json theorem_params_json(const TheoremParams& p) {
    return nlohmann::json{{"m", p.m},       {"n", p.n},   {"omega", p.omega},
                          {"nu", p.nu},     {"r0", p.r0}, {"r1", p.r1},
                          {"alpha", p.alpha}, {"beta", p.beta}};
}

nlohmann::json tail_report_json(const TailBoundReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["theorem"] = rep.theorem;
    j["params"] = theorem_params_json(rep.params);
    j["trials"] = rep.trials;
    j["vacuous"] = rep.vacuous;
    j["lemma3_bound"] = rep.vacuous ? nlohmann::json("infinite") : nlohmann::json(rep.lemma3_bound);
    j["expectation_estimate"] = rep.expectation_estimate;
    j["expectation_stderr"] = rep.expectation_stderr;
    j["lhs_mean"] = rep.lhs_mean;
    j["lhs_stderr"] = rep.lhs_stderr;
    j["lhs_median"] = rep.lhs_median;
    j["all_dominated"] = rep.all_dominated;
    j["markov_selfcheck_pass"] = rep.markov_selfcheck_pass;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"theta", r.theta},
                        {"empirical_tail", r.empirical_tail},
                        {"wilson_low", r.wilson_low},
                        {"wilson_high", r.wilson_high},
                        {"bound_rhs", rep.vacuous ? nlohmann::json("infinite")
                                                  : nlohmann::json(r.bound_rhs)},
                        {"dominated", r.dominated}});
    }
    j["rows"] = rows;
    return j;
}

std::string tail_report_csv(const TailBoundReport& rep) {
    std::ostringstream out;
    out << "theta,empirical_tail,wilson_low,wilson_high,bound_rhs,dominated\n";
    for (const auto& r : rep.rows) {
        out << format_double(r.theta) << ',' << format_double(r.empirical_tail) << ','
            << format_double(r.wilson_low) << ',' << format_double(r.wilson_high) << ','
            << (rep.vacuous ? "inf" : format_double(r.bound_rhs)) << ','
            << (r.dominated ? 1 : 0) << '\n';
    }
    return out.str();
}

nlohmann::json convergence_report_json(const ConvergenceReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["t_grid"] = rep.t_grid;
    j["mean_operator_gap"] = rep.mean_operator_gap;
    j["mean_input_gap"] = rep.mean_input_gap;
    j["monotone_trend"] = rep.monotone_trend;
    j["strictly_decreasing"] = rep.strictly_decreasing;
    j["final_over_initial"] = rep.final_over_initial;
    return j;
}

std::string convergence_report_csv(const ConvergenceReport& rep) {
    std::ostringstream out;
    out << "t,mean_operator_gap,mean_input_gap\n";
    for (std::size_t k = 0; k < rep.t_grid.size(); ++k)
        out << format_double(rep.t_grid[k]) << ',' << format_double(rep.mean_operator_gap[k])
            << ',' << format_double(rep.mean_input_gap[k]) << '\n';
    return out.str();
}

nlohmann::json derivative_report_json(const DerivativeCheckReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["h_grid"] = rep.h_grid;
    j["residuals"] = rep.residuals;
    j["max_residual"] = rep.max_residual;
    return j;
}

std::string derivative_report_csv(const DerivativeCheckReport& rep) {
    std::ostringstream out;
    out << "h,residual\n";
    for (std::size_t k = 0; k < rep.h_grid.size(); ++k)
        out << format_double(rep.h_grid[k]) << ',' << format_double(rep.residuals[k]) << '\n';
    return out.str();
}

}  // namespace pdti
