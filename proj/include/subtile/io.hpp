#pragma once

#include <ostream>
#include <string>

#include "subtile/ergodic.hpp"
#include "subtile/experiment.hpp"
#include "subtile/spectral.hpp"

namespace subtile {

// Fixed round-trip formatting so identical runs produce identical bytes.
std::string fmt_double(double v);

// columns: example,v_label,N,R,value,rms,anchors
void write_series_csv(std::ostream& os, const ExperimentSeries& series);

// columns: example,function,N,R,G,stderr,anchors,kernel,tau,seed
void write_spectral_csv(std::ostream& os, const ExperimentSeries& series, const KernelSpec& kernel);

// columns: example,function,a,N,value,stderr,anchors,seed
void write_eta_csv(std::ostream& os, const std::string& example, const std::string& function,
                   const std::vector<EtaRow>& rows, int anchors, uint64_t seed);

std::string fit_summary_json(const std::string& example, const std::string& quantity,
                             const FitResult& fit, double expected, bool pass,
                             const std::string& note, uint64_t seed);

std::string info_json(const Model& model);

}  // namespace subtile
