#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planimetric/verify.hpp"

namespace planimetric::report {

// One flattened output row; shared by distance results and certificates.
struct Row {
    std::string claim_id;
    std::string domain;
    std::uint64_t seed = 0;
    int sample_id = 0;
    Complex z;
    Complex w;
    double value = 0.0;
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    double margin = 0.0;
};

// Fixed header: claim_id,domain,seed,sample_id,z_re,z_im,w_re,w_im,value,
// bound_lo,bound_hi,margin. Byte-stable for fixed inputs.
std::string to_csv(const std::vector<Row>& rows);

std::vector<Row> rows_from_certificate(const verify::Certificate& cert);

// Serialize with a stable key order and shortest round-trip doubles.
std::string to_json_string(const nlohmann::ordered_json& doc);

} // namespace planimetric::report
