#pragma once

#include "proxcert/certificates.hpp"
#include "proxcert/problem.hpp"
#include "proxcert/report.hpp"
#include "proxcert/solver.hpp"

#include <string>

namespace proxcert {

// All writers are deterministic: fixed key order, LF line endings, reals
// rendered with up to 17 significant digits so values round-trip exactly.

std::string problem_to_json(const CompositeProblem& p);
CompositeProblem problem_from_json(const std::string& text);

void save_problem(const CompositeProblem& p, const std::string& path);
CompositeProblem load_problem(const std::string& path);

// CSV with header "k,phi,dist,gmap_norm", one row per trace record.
std::string trace_to_csv(const SolverTrace& trace);
void save_trace_csv(const SolverTrace& trace, const std::string& path);

std::string estimate_to_json(const PropertyEstimate& e);
std::string hoffman_to_json(const HoffmanEstimate& e);
std::string report_to_json(const Report& r);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace proxcert
