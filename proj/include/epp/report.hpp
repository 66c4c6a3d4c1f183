#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epp/bicep.hpp"
#include "epp/choi.hpp"
#include "epp/universality.hpp"

namespace epp {

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(std::string_view name);  // "json", "csv", "text"

// All JSON documents carry {"schema": 1, "kind": "..."} and are byte-stable
// for identical inputs. CSV is a flat projection (one row per list element,
// scalar context repeated); text is a human-readable key/value listing.

struct SimulateReport {
  int n = 0;
  int m = 0;
  std::vector<BellDiagonalState> inputs;
  ProtocolOutcome outcome;
  bool include_breakdown = false;
  std::optional<ProtocolOutcome> dense_oracle;
  double max_abs_delta = 0;  // meaningful when dense_oracle is present
};

std::string render_simulate(const SimulateReport& rep, ReportFormat fmt);
std::string render_check(const CheckReport& rep, ReportFormat fmt);
std::string render_search(const SearchReport& rep, ReportFormat fmt);

struct ChoiTableRow {
  int n = 0;
  std::optional<double> t_norm_bruteforce;  // present when the sweep ran
  double t_norm_closed_form = 0;
  double bound = 0;
  double margin = 0;
  bool violated = false;
  bool saturated = false;
  double ppt_min_eigenvalue = 0;
};

std::string render_choi_table(const std::vector<ChoiTableRow>& rows,
                              ReportFormat fmt);

struct ChoiPptDoc {
  PptReport report;
  double trace = 0;
  std::optional<double> dense_min;  // n <= 4 dense cross-check
  std::optional<double> dense_max;
};

std::string render_choi_ppt(const ChoiPptDoc& doc, ReportFormat fmt);

struct ChoiFidelityDoc {
  std::vector<double> inputs;
  double output_fidelity = 0;
  double lower_bound_crosscheck = 0;  // independent implementation
};

std::string render_choi_fidelity(const ChoiFidelityDoc& doc, ReportFormat fmt);

}  // namespace epp
