#pragma once

// CSV and JSON artifact writers. CSV numbers use 15 significant digits with
// '.' decimal; all files are written to a temporary and renamed into place.

#include <string>

#include "memslab/estimates.hpp"
#include "memslab/nonlinearity.hpp"
#include "memslab/radial_solver.hpp"
#include "memslab/spectral.hpp"

namespace memslab::io {

inline constexpr const char* kVersion = "0.1.0";

// columns: s,lambda,max_u,l1_norm,mu1
void write_branch_csv(const radial::Branch& br, const std::string& path);

// columns: r,w,dw
void write_profile_csv(const radial::RadialProfile& prof,
                       const std::string& path);

// lambda*, s_fold, fold and singular flags
void write_branch_json(const radial::Branch& br, bool singular_extremal,
                       const std::string& path);

// CRCertificate, threshold table, relation defects
void write_nonlinearity_json(const nonlin::Nonlinearity& nl,
                             const nonlin::CRCertificate& cert,
                             const nonlin::RelationDefects& defects,
                             const std::string& path);

// (tag, params, samples, verdict, version)
void write_estimate_json(const est::EstimateReport& rep,
                         const std::string& path);
// columns: s,ratio
void write_estimate_csv(const est::EstimateReport& rep,
                        const std::string& path);

void write_spectral_json(const spectral::SpectralResult& res, double s,
                         double lambda, double n, const std::string& path);

// atomic write-then-rename of arbitrary text
void write_text_atomic(const std::string& path, const std::string& text);

std::string format_sig15(double v);

}  // namespace memslab::io
