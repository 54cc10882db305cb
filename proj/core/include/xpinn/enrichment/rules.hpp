#pragma once

// Enrichment kernels packaged as autodiff custom rules.

#include "xpinn/autodiff/rules.hpp"
#include "xpinn/enrichment/enrichment.hpp"

#include <string>

namespace xpinn::enrichment {

ad::CustomRule make_heaviside_rule(double x0, std::string tag = "heaviside");
ad::CustomRule make_sawtooth_rule(const SawtoothParams& p, std::string tag = "sawtooth");
ad::CustomRule make_xi_rule(const CrackLocalFrame& frame, std::string tag = "xi_profile");
ad::CustomRule make_lambda_rule(const CrackLocalFrame& frame, std::string tag = "lambda_profile");
/// Binary rule on global (x, y).
ad::CustomRule make_enrichment_2d_rule(const CrackLocalFrame& frame, std::string tag = "enrichment_2d");

}  // namespace xpinn::enrichment
