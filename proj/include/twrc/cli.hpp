#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "twrc/certificate.hpp"
#include "twrc/model.hpp"

namespace twrc {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertFailure = 1;
inline constexpr int kExitValidation = 2;

// Rounds to 12 significant digits; -0 becomes +0.
double round12(double x);

// Formatting used in CSV cells.
std::string format12(double x);

// {"h":[4], "g":[4], "P":[4], "sigma2":[4], "sigmaR2": x, "PR": x}. Throws
// ValidationError naming the offending field.
SystemParams parse_channel(const nlohmann::json& j);
nlohmann::json channel_to_json(const SystemParams& p);

nlohmann::json terms_to_json(const CapacityTerms& t);
nlohmann::json certificate_to_json(const GapCertificate& c);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace twrc
