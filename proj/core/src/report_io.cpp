#include "memslab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace memslab::io {

namespace {

using nlohmann::json;

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void write_json_atomic(const json& doc, const std::string& path) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

}  // namespace

std::string format_sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_branch_csv(const radial::Branch& br, const std::string& path) {
  std::string text = "s,lambda,max_u,l1_norm,mu1\n";
  for (const auto& pt : br.points) {
    text += format_sig15(pt.s) + "," + format_sig15(pt.lambda) + "," +
            format_sig15(pt.max_u) + "," + format_sig15(pt.l1_norm) + "," +
            format_sig15(pt.mu1) + "\n";
  }
  write_text_atomic(path, text);
}

void write_profile_csv(const radial::RadialProfile& prof,
                       const std::string& path) {
  std::string text = "r,w,dw\n";
  for (std::size_t i = 0; i < prof.u.x.size(); ++i) {
    text += format_sig15(prof.u.x[i]) + "," + format_sig15(prof.u.y[i]) + "," +
            format_sig15(prof.u.dy[i]) + "\n";
  }
  write_text_atomic(path, text);
}

void write_branch_json(const radial::Branch& br, bool singular_extremal,
                       const std::string& path) {
  json doc;
  doc["tag"] = br.tag;
  doc["version"] = kVersion;
  doc["params"] = {{"n", br.n}, {"points", br.points.size()}};
  doc["lambda_star"] = br.lambda_star;
  doc["s_fold"] = br.s_star;
  doc["interior_fold"] = br.has_interior_fold;
  doc["singular_extremal"] = singular_extremal;
  write_json_atomic(doc, path);
}

void write_nonlinearity_json(const nonlin::Nonlinearity& nl,
                             const nonlin::CRCertificate& cert,
                             const nonlin::RelationDefects& defects,
                             const std::string& path) {
  json doc;
  doc["tag"] = nl.tag();
  doc["version"] = kVersion;
  doc["singular"] = nl.is_singular();
  doc["nonintegrable"] = nl.is_nonintegrable();
  doc["convex"] = nl.is_convex();
  doc["certificate"] = {
      {"theta", cert.theta},
      {"K", finite_or_null(cert.K)},
      {"K_unbounded", cert.K_unbounded},
      {"K_tilde", finite_or_null(cert.K_tilde)},
      {"K_tilde_unbounded", cert.K_tilde_unbounded},
      {"gamma_lo", cert.gamma_lo},
      {"gamma_hi", cert.gamma_hi},
      {"q_lo", cert.q_lo},
      {"q_hi", cert.q_hi},
      {"m_lo", cert.m_lo},
      {"m_hi", cert.m_hi},
      {"cr_condition_holds", cert.cr_condition_holds},
  };
  if (cert.t0)
    doc["certificate"]["t0"] = *cert.t0;
  else
    doc["certificate"]["t0"] = nullptr;

  json thresholds;
  if (cert.m_lo >= 1.0 && cert.gamma_lo > 1.0)
    thresholds["n_sharp"] =
        nonlin::castorina_threshold(cert.gamma_lo, cert.m_lo);
  if (nl.family() == nonlin::Family::power ||
      nl.family() == nonlin::Family::mems ||
      nl.family() == nonlin::Family::scaled_power)
    thresholds["n_p"] = nonlin::np_threshold(nl.param_p());
  thresholds["extended_range_bound"] =
      4.0 + 2.0 * std::sqrt(std::max(cert.gamma_lo, 0.0));
  thresholds["extended_range_eligible"] = cert.gamma_lo < 1.0;
  doc["thresholds"] = thresholds;

  doc["relation_defects"] = {{"gamma_defect", defects.gamma_defect},
                             {"mq_defect", defects.mq_defect},
                             {"limits_exist", defects.limits_exist}};
  write_json_atomic(doc, path);
}

void write_estimate_json(const est::EstimateReport& rep,
                         const std::string& path) {
  json doc;
  doc["tag"] = rep.tag;
  doc["version"] = kVersion;
  json params = {{"n", rep.n}, {"family", rep.family}};
  for (const auto& [k, v] : rep.params) params[k] = v;
  doc["params"] = params;
  json samples = json::array();
  for (const auto& s : rep.samples)
    samples.push_back({{"s", s.s}, {"ratio", s.ratio}});
  doc["samples"] = samples;
  doc["max_ratio"] = rep.max_ratio;
  doc["verdict"] = est::verdict_name(rep.verdict);
  write_json_atomic(doc, path);
}

void write_estimate_csv(const est::EstimateReport& rep,
                        const std::string& path) {
  std::string text = "s,ratio\n";
  for (const auto& s : rep.samples)
    text += format_sig15(s.s) + "," + format_sig15(s.ratio) + "\n";
  write_text_atomic(path, text);
}

void write_spectral_json(const spectral::SpectralResult& res, double s,
                         double lambda, double n, const std::string& path) {
  json doc;
  doc["tag"] = "spectral";
  doc["version"] = kVersion;
  doc["params"] = {{"s", s}, {"lambda", lambda}, {"n", n}};
  doc["mu1"] = res.mu1;
  doc["error_bar"] = res.error_bar;
  doc["mu_coarse"] = res.mu_coarse;
  doc["mu_fine"] = res.mu_fine;
  doc["truncated"] = res.truncated;
  doc["truncation_radius"] = res.truncation_radius;
  write_json_atomic(doc, path);
}

}  // namespace memslab::io
