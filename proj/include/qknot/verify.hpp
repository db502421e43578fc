#pragma once

#include <random>
#include <string>
#include <vector>

#include "qknot/common.hpp"
#include "qknot/knot_spec.hpp"
#include "qknot/saddle.hpp"

namespace qknot::verify {

/// {p, volume, x0} rows of the twist-knot volume table, used by the suite
/// runners and the acceptance checks.
struct TableRow {
  int p;
  double volume;
  Cx x0;
};
const std::vector<TableRow>& volume_table();

/// Generic interior sample point for gradient checks: every Li2 argument of
/// the family's H stays >= 1e-2 away from the [1, inf) cut and every log
/// argument >= 1e-2 away from (-inf, 0].
saddle::SaddleChain random_chain(const KnotSpec& knot, std::mt19937_64& rng);

std::vector<std::string> suite_names();

/// Runs one of {poly, jones, apoly, dilog, saddle, all}; throws
/// std::invalid_argument for an unknown name.
Report run_suite(const std::string& name);

}  // namespace qknot::verify
