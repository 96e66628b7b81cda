#pragma once

// Named reproduction cases: each runs a fixed set of computations and
// compares them against the manifold references and exact identities.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace curvfun {

/// taubes, spheres, ellipsoids, rp2, products, cp2, so4, su3, klembeck,
/// discrete.
const std::vector<std::string>& reproduce_cases();

/// Record with kind "reproduce": case, seed, workers, checks (case,
/// quantity, tag, expected, measured, tolerance, verdict, note) and summary
/// counts. Verdicts are PASS, FAIL or DISCREPANCY-DOCUMENTED. `name` may be
/// "all". Throws kConfig for an unknown case.
nlohmann::json reproduce(const std::string& name, std::uint64_t seed = 0, int workers = 1);

/// True iff no check in the record has verdict FAIL.
bool reproduce_passed(const nlohmann::json& record);

/// The 8 x 8 sectional matrix of su(3) in the Gell-Mann basis and the 6 x 6
/// pattern at the origin of the Klembeck patch, as printed in the source
/// literature; entries are rational strings.
const std::vector<std::vector<std::string>>& su3_printed_sectional();
const std::vector<std::vector<std::string>>& klembeck_printed_sectional();

}  // namespace curvfun
