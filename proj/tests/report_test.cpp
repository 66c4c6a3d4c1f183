#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "epp/report.hpp"
#include "json.hpp"

using namespace epp;
using nlohmann::json;

namespace {

size_t line_count(const std::string& s) {
  return size_t(std::count(s.begin(), s.end(), '\n'));
}

SimulateReport worked_example() {
  SimulateReport rep;
  rep.n = 2;
  rep.m = 0;
  rep.inputs = {isotropic(0.9), isotropic(0.85)};
  rep.outcome = dejmps_outcome(rep.inputs[0], rep.inputs[1]);
  return rep;
}

}  // namespace

TEST_CASE("format names parse") {
  CHECK(parse_format("json") == ReportFormat::Json);
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK(parse_format("text") == ReportFormat::Text);
  CHECK_THROWS_AS((void)parse_format("xml"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_format(""), std::invalid_argument);
}

TEST_CASE("json documents carry schema, kind, and stable bytes") {
  const auto rep = worked_example();
  const std::string out = render_simulate(rep, ReportFormat::Json);
  CHECK(out == render_simulate(rep, ReportFormat::Json));
  CHECK(out.back() == '\n');

  const json doc = json::parse(out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("kind") == "simulate");
  CHECK(doc.at("n") == 2);
  CHECK(doc.at("inputs").size() == 2);
  CHECK(doc.at("success_probability").get<double>() ==
        doctest::Approx(127.0 / 150).epsilon(1e-14));
  CHECK(doc.at("output_fidelity").get<double>() ==
        doctest::Approx(115.0 / 127).epsilon(1e-14));
}

TEST_CASE("impossible branches serialize as nulls") {
  SimulateReport rep;
  rep.n = 2;
  rep.inputs = {make_bds(1, 0, 0, 0), make_bds(0, 1, 0, 0)};
  rep.outcome = simulate_pauli_path(
      CliffordTableau::from_gates(2, parse_gates("CX 0 1", 2)), rep.inputs,
      0);
  const json doc = json::parse(render_simulate(rep, ReportFormat::Json));
  CHECK(doc.at("success_probability") == 0.0);
  CHECK(doc.at("output_fidelity").is_null());
  CHECK(doc.at("output_state").is_null());

  // CSV leaves the impossible fields empty; text spells out n/a.
  const std::string csv = render_simulate(rep, ReportFormat::Csv);
  CHECK(csv.find("nan") == std::string::npos);
  const std::string text = render_simulate(rep, ReportFormat::Text);
  CHECK(text.find("n/a") != std::string::npos);
}

TEST_CASE("check documents list violations in order") {
  const auto cx = CliffordTableau::from_gates(2, parse_gates("CX 0 1", 2));
  const auto rep = check_universal_condition(cx, 2, 0);
  const json doc = json::parse(render_check(rep, ReportFormat::Json));
  CHECK(doc.at("kind") == "check");
  CHECK(doc.at("mode") == "full");
  CHECK(doc.at("passed") == false);
  CHECK(doc.at("checked_count") == 7);
  REQUIRE(doc.at("violations").size() == 2);
  CHECK(doc.at("violations")[0].at("source") == "ZI");
  CHECK(doc.at("violations")[0].at("image") == "ZI");
  CHECK(doc.at("violations")[1].at("source") == "IZ");

  // One CSV row per violation, plus the header.
  const std::string csv = render_check(rep, ReportFormat::Csv);
  CHECK(line_count(csv) == 3);
}

TEST_CASE("search documents name the quotient and the samples") {
  const auto rep = exhaustive_no_go(2, 0, CheckMode::Ordered, 2, 25, 5);
  const std::string out = render_search(rep, ReportFormat::Json);
  const json doc = json::parse(out);
  CHECK(doc.at("kind") == "search");
  CHECK(doc.at("mode") == "ordered");
  CHECK(doc.at("total_candidates") == 720);
  CHECK(doc.at("pass_count") == 144);
  CHECK(doc.at("all_passers_trivial") == true);
  CHECK(doc.at("quotient").get<std::string>().find("Sp(4, 2)") !=
        std::string::npos);
  CHECK(doc.at("samples").size() == 3);

  const std::string csv = render_search(rep, ReportFormat::Csv);
  CHECK(line_count(csv) == 1 + rep.samples.size());
  const std::string text = render_search(rep, ReportFormat::Text);
  CHECK(text.find("Sp(4, 2)") != std::string::npos);
}

TEST_CASE("table documents project one row per pair count") {
  std::vector<ChoiTableRow> rows;
  for (int n = 1; n <= 3; ++n) {
    const auto v = separability_verdict(n);
    ChoiTableRow row;
    row.n = n;
    if (n <= 2) row.t_norm_bruteforce = t_norm_bruteforce(n).t_norm;
    row.t_norm_closed_form = v.t_norm;
    row.bound = v.bound;
    row.margin = v.margin;
    row.violated = v.violated;
    row.saturated = v.saturated;
    row.ppt_min_eigenvalue = ppt_min_eigenvalue(build_choi(n));
    rows.push_back(row);
  }
  const json doc = json::parse(render_choi_table(rows, ReportFormat::Json));
  CHECK(doc.at("kind") == "choi_tnorm");
  REQUIRE(doc.at("rows").size() == 3);
  CHECK(doc.at("rows")[1].at("t_norm_closed_form") == 36.0);
  CHECK(doc.at("rows")[1].at("violated") == true);
  CHECK(doc.at("rows")[2].at("saturated") == true);
  CHECK(doc.at("rows")[2].at("t_norm_bruteforce").is_null());

  CHECK(line_count(render_choi_table(rows, ReportFormat::Csv)) == 4);
}

TEST_CASE("spectrum and fidelity documents") {
  ChoiPptDoc doc;
  const auto j = build_choi(2);
  doc.report = ppt_spectrum(j);
  doc.trace = j.trace;
  const json parsed = json::parse(render_choi_ppt(doc, ReportFormat::Json));
  CHECK(parsed.at("kind") == "choi_ppt");
  CHECK(parsed.at("min_eigenvalue") == 0.0);
  CHECK(parsed.at("dense_min_eigenvalue").is_null());
  CHECK(parsed.at("spectrum").size() == 4);

  ChoiFidelityDoc fdoc;
  fdoc.inputs = {0.9, 0.85};
  fdoc.output_fidelity = ppt_output_fidelity(fdoc.inputs);
  fdoc.lower_bound_crosscheck = fidelity_lower_bound(fdoc.inputs);
  const json fparsed =
      json::parse(render_choi_fidelity(fdoc, ReportFormat::Json));
  CHECK(fparsed.at("kind") == "choi_fidelity");
  CHECK(fparsed.at("output_fidelity").get<double>() ==
        doctest::Approx(0.9807692307692307).epsilon(1e-15));
  CHECK(fparsed.at("inputs").size() == 2);
}
