//! \file output.hpp
//! \brief CSV emission: solution dumps, 2D diagonal slices and run reports.

#ifndef LDIRK_OUTPUT_HPP_
#define LDIRK_OUTPUT_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ldirk/runner.hpp"

namespace ldirk {

//! Shortest representation that round-trips a double (17 significant digits).
std::string format_number(double v);

std::vector<std::string> component_names(ModelKind model);

void write_solution_csv(std::ostream& os, const RunResult& result);
//! 2D only: the reference component along the diagonal x = y (s is the x
//! coordinate of each diagonal node).
void write_diagonal_csv(std::ostream& os, const RunResult& result);
void write_report_csv(std::ostream& os, const RunResult& result);

struct EmitPaths {
  std::filesystem::path solution;
  std::filesystem::path diagonal;  // empty for 1D runs
  std::filesystem::path report;
};

//! Write solution/diagonal/report files under out_dir, named after the case
//! and integrator. Throws std::runtime_error on unwritable paths.
EmitPaths emit_results(const RunResult& result, const std::filesystem::path& out_dir);

}  // namespace ldirk

#endif  // LDIRK_OUTPUT_HPP_
