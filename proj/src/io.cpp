#include "subtile/io.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace subtile {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(std::ostream& os, const ExperimentSeries& series) {
    os << "example,v_label,N,R,value,rms,anchors\n";
    for (const SeriesRow& r : series.rows)
        os << series.example << ',' << series.label << ',' << r.N << ',' << fmt_double(r.R) << ','
           << fmt_double(r.value) << ',' << fmt_double(r.rms) << ',' << r.anchors << '\n';
}

void write_spectral_csv(std::ostream& os, const ExperimentSeries& series,
                        const KernelSpec& kernel) {
    os << "example,function,N,R,G,stderr,anchors,kernel,tau,seed\n";
    for (const SeriesRow& r : series.rows)
        os << series.example << ',' << series.label << ',' << r.N << ',' << fmt_double(r.R) << ','
           << fmt_double(r.value) << ',' << fmt_double(r.stderr_) << ',' << r.anchors
           << ",gaussian," << fmt_double(kernel.tau) << ',' << series.seed << '\n';
}

void write_eta_csv(std::ostream& os, const std::string& example, const std::string& function,
                   const std::vector<EtaRow>& rows, int anchors, uint64_t seed) {
    os << "example,function,a,N,value,stderr,anchors,seed\n";
    for (const EtaRow& r : rows)
        os << example << ',' << function << ',' << fmt_double(r.a) << ',' << r.N << ','
           << fmt_double(r.value) << ',' << fmt_double(r.stderr_) << ',' << anchors << ',' << seed
           << '\n';
}

std::string fit_summary_json(const std::string& example, const std::string& quantity,
                             const FitResult& fit, double expected, bool pass,
                             const std::string& note, uint64_t seed) {
    nlohmann::ordered_json j;
    j["example"] = example;
    j["quantity"] = quantity;
    j["slope"] = fit.slope;
    j["stderr"] = fit.stderr_;
    j["points"] = fit.points;
    if (std::isfinite(expected)) j["expected"] = expected;
    else j["expected"] = nullptr;
    j["pass"] = pass;
    j["seed"] = seed;
    if (!note.empty()) j["note"] = note;
    return j.dump(2);
}

std::string info_json(const Model& model) {
    const Substitution& sub = *model.sub;
    const SpectralData& sd = model.sd;
    nlohmann::ordered_json j;
    j["name"] = sub.name;
    j["dimension"] = sub.dim;
    j["lambda"] = sub.lambda;
    nlohmann::ordered_json S = nlohmann::ordered_json::array();
    for (int i = 0; i < sd.S.n; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < sd.S.n; ++k) row.push_back(sd.S.at(i, k));
        S.push_back(row);
    }
    j["incidence"] = S;
    j["theta"] = sd.eigenvalues;
    if (std::isfinite(sd.alpha)) j["alpha"] = sd.alpha;
    else j["alpha"] = nullptr;
    j["hypothesis_ok"] = sd.hypothesis_ok;
    j["expanding_dims"] = sd.expanding_dims;
    j["jordan_s"] = sd.jordan_s;
    j["frequencies"] = model.freq;
    j["volumes"] = sub.volumes;
    if (sub.dim == 1) j["lengths"] = sub.lengths;
    j["asserted_nonperiodic"] = sub.asserted_nonperiodic;
    j["provenance"] = sub.provenance;
    return j.dump(2);
}

}  // namespace subtile
