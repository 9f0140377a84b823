#ifndef QHFPT_REPORT_HPP
#define QHFPT_REPORT_HPP

#include <string>

#include "json.hpp"

#include "qhfpt/families.hpp"
#include "qhfpt/jacobian.hpp"
#include "qhfpt/threshold.hpp"

// JSON and CSV renderings of the library results. Rationals are always
// "num/den" strings; nothing is ever written as floating point.
namespace qhfpt::report {

using nlohmann::json;

json ring_json(const GradedRing& ring);
json ladder_json(const MuLadder& ladder);
json bound_checks_json(const MuLadder& ladder);
json fpt_json(const FptResult& r);
json certificate_json(const IsolatedCertificate& c);
json milnor_json(const MilnorNumber& m, const HilbertNumeratorCheck& h);
json family_json(const FamilyReport& r);
std::string family_csv(const FamilyReport& r);
json error_json(const std::string& kind, const std::string& detail);

// "key: value" lines, nested keys joined by '.'.
std::string to_text(const json& j);

} // namespace qhfpt::report

#endif
