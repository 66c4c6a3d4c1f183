#include "epp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace epp {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxListedViolations = 64;

std::string fmt_double(double v, const char* spec) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string csv_num(double v) { return fmt_double(v, "%.17g"); }
std::string text_num(double v) {
  return std::isnan(v) ? "n/a" : fmt_double(v, "%.12g");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

const char* csv_bool(bool b) { return b ? "true" : "false"; }

ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

ordered_json state_json(const BellDiagonalState& s) {
  return ordered_json::array({s.p[0], s.p[1], s.p[2], s.p[3]});
}

ordered_json outcome_json(const ProtocolOutcome& o, bool breakdown) {
  ordered_json j;
  j["success_probability"] = o.success_prob;
  j["output_state"] =
      o.output_state ? state_json(*o.output_state) : ordered_json(nullptr);
  j["output_fidelity"] = json_number(o.output_fidelity);
  j["success_components"] =
      ordered_json::array({o.success_components[0], o.success_components[1],
                           o.success_components[2], o.success_components[3]});
  if (breakdown && o.breakdown) {
    ordered_json b;
    b["correct_clean_kept"] = o.breakdown->correct_clean_kept;
    b["correct_noisy_kept"] = o.breakdown->correct_noisy_kept;
    b["undetectable"] = o.breakdown->undetectable;
    b["incorrect"] = o.breakdown->incorrect;
    j["breakdown"] = b;
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json violation_json(const Violation& v) {
  ordered_json j;
  j["source"] = v.source.str();
  j["image"] = v.image.str();
  return j;
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw std::invalid_argument("unknown format (expected json, csv, or text)");
}

std::string render_simulate(const SimulateReport& rep, ReportFormat fmt) {
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "simulate";
    j["n"] = rep.n;
    j["m"] = rep.m;
    ordered_json ins = ordered_json::array();
    for (const auto& s : rep.inputs) ins.push_back(state_json(s));
    j["inputs"] = ins;
    j.update(outcome_json(rep.outcome, rep.include_breakdown));
    if (rep.dense_oracle) {
      j["dense_oracle"] = outcome_json(*rep.dense_oracle, false);
      j["max_abs_delta"] = rep.max_abs_delta;
    }
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,m,success_probability,output_fidelity,out_i,out_x,out_y,out_z";
    if (rep.include_breakdown && rep.outcome.breakdown) {
      out << ",correct_clean_kept,correct_noisy_kept,undetectable,incorrect";
    }
    if (rep.dense_oracle) {
      out << ",dense_success_probability,dense_output_fidelity,max_abs_delta";
    }
    out << "\n";
    const auto& o = rep.outcome;
    out << rep.n << "," << rep.m << "," << csv_num(o.success_prob) << ","
        << csv_num(o.output_fidelity);
    for (int i = 0; i < 4; ++i) {
      out << "," << (o.output_state ? csv_num(o.output_state->p[(std::size_t)i])
                                    : std::string());
    }
    if (rep.include_breakdown && o.breakdown) {
      out << "," << csv_num(o.breakdown->correct_clean_kept) << ","
          << csv_num(o.breakdown->correct_noisy_kept) << ","
          << csv_num(o.breakdown->undetectable) << ","
          << csv_num(o.breakdown->incorrect);
    }
    if (rep.dense_oracle) {
      out << "," << csv_num(rep.dense_oracle->success_prob) << ","
          << csv_num(rep.dense_oracle->output_fidelity) << ","
          << csv_num(rep.max_abs_delta);
    }
    out << "\n";
    return out.str();
  }
  std::ostringstream out;
  out << "simulate: n=" << rep.n << " m=" << rep.m << "\n";
  for (std::size_t i = 0; i < rep.inputs.size(); ++i) {
    const auto& p = rep.inputs[i].p;
    out << "input[" << i << "]: " << text_num(p[0]) << " " << text_num(p[1])
        << " " << text_num(p[2]) << " " << text_num(p[3]) << "\n";
  }
  const auto& o = rep.outcome;
  out << "success_probability: " << text_num(o.success_prob) << "\n";
  if (o.output_state) {
    const auto& p = o.output_state->p;
    out << "output_state: " << text_num(p[0]) << " " << text_num(p[1]) << " "
        << text_num(p[2]) << " " << text_num(p[3]) << "\n";
  } else {
    out << "output_state: n/a (protocol never succeeds)\n";
  }
  out << "output_fidelity: " << text_num(o.output_fidelity) << "\n";
  if (rep.include_breakdown && o.breakdown) {
    out << "correct_clean_kept: " << text_num(o.breakdown->correct_clean_kept)
        << "\n";
    out << "correct_noisy_kept: " << text_num(o.breakdown->correct_noisy_kept)
        << "\n";
    out << "undetectable: " << text_num(o.breakdown->undetectable) << "\n";
    out << "incorrect: " << text_num(o.breakdown->incorrect) << "\n";
  }
  if (rep.dense_oracle) {
    out << "dense_success_probability: "
        << text_num(rep.dense_oracle->success_prob) << "\n";
    out << "dense_output_fidelity: "
        << text_num(rep.dense_oracle->output_fidelity) << "\n";
    out << "max_abs_delta: " << text_num(rep.max_abs_delta) << "\n";
  }
  return out.str();
}

std::string render_check(const CheckReport& rep, ReportFormat fmt) {
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "check";
    j["mode"] = check_mode_name(rep.mode);
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["checked_count"] = rep.checked_count;
    j["passed"] = rep.passed;
    j["violation_count"] = rep.violations.size();
    j["violations_truncated"] = rep.violations.size() > kMaxListedViolations;
    ordered_json vs = ordered_json::array();
    for (std::size_t i = 0;
         i < rep.violations.size() && i < kMaxListedViolations; ++i) {
      vs.push_back(violation_json(rep.violations[i]));
    }
    j["violations"] = vs;
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "mode,n,m,checked_count,passed,source,image\n";
    auto context = [&]() {
      out << check_mode_name(rep.mode) << "," << rep.n << "," << rep.m << ","
          << rep.checked_count << "," << csv_bool(rep.passed);
    };
    if (rep.violations.empty()) {
      context();
      out << ",,\n";
    } else {
      for (std::size_t i = 0;
           i < rep.violations.size() && i < kMaxListedViolations; ++i) {
        context();
        out << "," << rep.violations[i].source.str() << ","
            << rep.violations[i].image.str() << "\n";
      }
    }
    return out.str();
  }
  std::ostringstream out;
  out << "check: mode=" << check_mode_name(rep.mode) << " n=" << rep.n
      << " m=" << rep.m << "\n";
  out << "checked_count: " << rep.checked_count << "\n";
  out << "passed: " << (rep.passed ? "yes" : "no") << "\n";
  out << "violation_count: " << rep.violations.size() << "\n";
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxListedViolations;
       ++i) {
    out << "violation: " << rep.violations[i].source.str() << " -> "
        << rep.violations[i].image.str() << "\n";
  }
  if (rep.violations.size() > kMaxListedViolations) {
    out << "... (" << rep.violations.size() - kMaxListedViolations
        << " more)\n";
  }
  return out.str();
}

std::string render_search(const SearchReport& rep, ReportFormat fmt) {
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "search";
    j["mode"] = check_mode_name(rep.mode);
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["quotient"] = rep.quotient;
    j["total_candidates"] = rep.total_candidates;
    j["pass_count"] = rep.pass_count;
    j["threads"] = rep.threads;
    j["seed"] = rep.seed;
    j["probe_trials"] = rep.probe_trials;
    j["probe_ran"] = rep.probe_ran;
    j["max_probe_deviation"] = rep.max_probe_deviation;
    j["all_passers_trivial"] = rep.all_passers_trivial;
    ordered_json samples = ordered_json::array();
    for (const auto& s : rep.samples) {
      ordered_json sj;
      sj["key"] = s.key;
      sj["passed"] = s.passed;
      sj["violation"] =
          s.violation ? violation_json(*s.violation) : ordered_json(nullptr);
      sj["probe_deviation"] = s.probe_deviation;
      samples.push_back(sj);
    }
    j["samples"] = samples;
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "mode,n,m,total_candidates,pass_count,max_probe_deviation,"
           "all_passers_trivial,key,passed,violation_source,violation_image,"
           "probe_deviation\n";
    auto context = [&]() {
      out << check_mode_name(rep.mode) << "," << rep.n << "," << rep.m << ","
          << rep.total_candidates << "," << rep.pass_count << ","
          << csv_num(rep.max_probe_deviation) << ","
          << csv_bool(rep.all_passers_trivial);
    };
    if (rep.samples.empty()) {
      context();
      out << ",,,,,\n";
    } else {
      for (const auto& s : rep.samples) {
        context();
        out << "," << s.key << "," << csv_bool(s.passed) << ","
            << (s.violation ? s.violation->source.str() : std::string()) << ","
            << (s.violation ? s.violation->image.str() : std::string()) << ","
            << csv_num(s.probe_deviation) << "\n";
      }
    }
    return out.str();
  }
  std::ostringstream out;
  out << "search: mode=" << check_mode_name(rep.mode) << " n=" << rep.n
      << " m=" << rep.m << "\n";
  out << "quotient: " << rep.quotient << "\n";
  out << "total_candidates: " << rep.total_candidates << "\n";
  out << "pass_count: " << rep.pass_count << "\n";
  out << "threads: " << rep.threads << "\n";
  out << "seed: " << rep.seed << "\n";
  if (rep.probe_ran) {
    out << "probe_trials: " << rep.probe_trials << "\n";
    out << "max_probe_deviation: " << text_num(rep.max_probe_deviation)
        << "\n";
    out << "all_passers_trivial: " << (rep.all_passers_trivial ? "yes" : "no")
        << "\n";
  }
  for (const auto& s : rep.samples) {
    out << "sample: key=" << s.key
        << " passed=" << (s.passed ? "yes" : "no");
    if (s.violation) {
      out << " violation=" << s.violation->source.str() << "->"
          << s.violation->image.str();
    }
    if (s.passed && rep.probe_ran) {
      out << " probe_deviation=" << text_num(s.probe_deviation);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_choi_table(const std::vector<ChoiTableRow>& rows,
                              ReportFormat fmt) {
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "choi_tnorm";
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json rj;
      rj["n"] = r.n;
      rj["t_norm_bruteforce"] = r.t_norm_bruteforce
                                    ? ordered_json(*r.t_norm_bruteforce)
                                    : ordered_json(nullptr);
      rj["t_norm_closed_form"] = r.t_norm_closed_form;
      rj["bound"] = r.bound;
      rj["margin"] = r.margin;
      rj["violated"] = r.violated;
      rj["saturated"] = r.saturated;
      rj["ppt_min_eigenvalue"] = r.ppt_min_eigenvalue;
      arr.push_back(rj);
    }
    j["rows"] = arr;
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,t_norm_bruteforce,t_norm_closed_form,bound,margin,violated,"
           "saturated,ppt_min_eigenvalue\n";
    for (const auto& r : rows) {
      out << r.n << ","
          << (r.t_norm_bruteforce ? csv_num(*r.t_norm_bruteforce)
                                  : std::string())
          << "," << csv_num(r.t_norm_closed_form) << "," << csv_num(r.bound)
          << "," << csv_num(r.margin) << "," << csv_bool(r.violated) << ","
          << csv_bool(r.saturated) << "," << csv_num(r.ppt_min_eigenvalue)
          << "\n";
    }
    return out.str();
  }
  std::ostringstream out;
  out << "n | t_norm(sweep) | t_norm(closed) | bound | margin | verdict | "
         "ppt_min_eig\n";
  for (const auto& r : rows) {
    out << r.n << " | "
        << (r.t_norm_bruteforce ? text_num(*r.t_norm_bruteforce)
                                : std::string("-"))
        << " | " << text_num(r.t_norm_closed_form) << " | "
        << text_num(r.bound) << " | " << text_num(r.margin) << " | "
        << (r.violated ? "violated" : (r.saturated ? "saturated" : "within"))
        << " | " << text_num(r.ppt_min_eigenvalue) << "\n";
  }
  return out.str();
}

std::string render_choi_ppt(const ChoiPptDoc& doc, ReportFormat fmt) {
  const PptReport& rep = doc.report;
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "choi_ppt";
    j["n"] = rep.n;
    j["trace"] = doc.trace;
    j["min_eigenvalue"] = rep.min_eigenvalue;
    j["max_eigenvalue"] = rep.max_eigenvalue;
    j["ppt"] = rep.ppt;
    j["dense_min_eigenvalue"] =
        doc.dense_min ? ordered_json(*doc.dense_min) : ordered_json(nullptr);
    j["dense_max_eigenvalue"] =
        doc.dense_max ? ordered_json(*doc.dense_max) : ordered_json(nullptr);
    ordered_json lines = ordered_json::array();
    for (const auto& line : rep.spectrum) {
      ordered_json lj;
      lj["k"] = line.k;
      lj["eigenvalue"] = line.eigenvalue;
      lj["multiplicity"] = line.multiplicity;
      lines.push_back(lj);
    }
    j["spectrum"] = lines;
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "n,k,eigenvalue,multiplicity,min_eigenvalue,ppt\n";
    for (const auto& line : rep.spectrum) {
      out << rep.n << "," << line.k << "," << csv_num(line.eigenvalue) << ","
          << line.multiplicity << "," << csv_num(rep.min_eigenvalue) << ","
          << csv_bool(rep.ppt) << "\n";
    }
    return out.str();
  }
  std::ostringstream out;
  out << "partial-transpose spectrum: n=" << rep.n << "\n";
  out << "trace: " << text_num(doc.trace) << "\n";
  for (const auto& line : rep.spectrum) {
    out << "k=" << line.k << " eigenvalue=" << text_num(line.eigenvalue)
        << " multiplicity=" << line.multiplicity << "\n";
  }
  out << "min_eigenvalue: " << text_num(rep.min_eigenvalue) << "\n";
  out << "max_eigenvalue: " << text_num(rep.max_eigenvalue) << "\n";
  out << "ppt: " << (rep.ppt ? "yes" : "no") << "\n";
  if (doc.dense_min) {
    out << "dense_min_eigenvalue: " << text_num(*doc.dense_min) << "\n";
  }
  if (doc.dense_max) {
    out << "dense_max_eigenvalue: " << text_num(*doc.dense_max) << "\n";
  }
  return out.str();
}

std::string render_choi_fidelity(const ChoiFidelityDoc& doc,
                                 ReportFormat fmt) {
  const double delta =
      std::abs(doc.output_fidelity - doc.lower_bound_crosscheck);
  if (fmt == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "choi_fidelity";
    j["inputs"] = doc.inputs;
    j["output_fidelity"] = doc.output_fidelity;
    j["lower_bound_crosscheck"] = doc.lower_bound_crosscheck;
    j["crosscheck_delta"] = delta;
    return dump(j);
  }
  if (fmt == ReportFormat::Csv) {
    std::ostringstream out;
    out << "index,input_fidelity,output_fidelity,lower_bound_crosscheck,"
           "crosscheck_delta\n";
    for (std::size_t i = 0; i < doc.inputs.size(); ++i) {
      out << i << "," << csv_num(doc.inputs[i]) << ","
          << csv_num(doc.output_fidelity) << ","
          << csv_num(doc.lower_bound_crosscheck) << "," << csv_num(delta)
          << "\n";
    }
    return out.str();
  }
  std::ostringstream out;
  out << "output fidelity law\n";
  for (std::size_t i = 0; i < doc.inputs.size(); ++i) {
    out << "input[" << i << "]: " << text_num(doc.inputs[i]) << "\n";
  }
  out << "output_fidelity: " << text_num(doc.output_fidelity) << "\n";
  out << "lower_bound_crosscheck: " << text_num(doc.lower_bound_crosscheck)
      << "\n";
  out << "crosscheck_delta: " << text_num(delta) << "\n";
  return out.str();
}

}  // namespace epp
