#include "planimetric/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace planimetric::report {

std::string to_csv(const std::vector<Row>& rows) {
    std::ostringstream out;
    out << "claim_id,domain,seed,sample_id,z_re,z_im,w_re,w_im,value,bound_lo,bound_hi,margin\n";
    for (const Row& r : rows) {
        out << r.claim_id << ',' << r.domain << ',' << r.seed << ',' << r.sample_id << ','
            << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ','
            << format_double(r.w.real()) << ',' << format_double(r.w.imag()) << ','
            << format_double(r.value) << ',' << format_double(r.bound_lo) << ','
            << format_double(r.bound_hi) << ',' << format_double(r.margin) << '\n';
    }
    return out.str();
}

std::vector<Row> rows_from_certificate(const verify::Certificate& cert) {
    std::vector<Row> rows;
    rows.reserve(cert.rows.size());
    for (const verify::SampleRow& s : cert.rows) {
        Row r;
        r.claim_id = cert.claim_id;
        r.domain = cert.domain;
        r.seed = cert.seed;
        r.sample_id = s.sample_id;
        r.z = s.z;
        r.w = s.w;
        r.value = s.value;
        r.bound_lo = s.bound_lo;
        r.bound_hi = s.bound_hi;
        r.margin = s.margin;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_json_string(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace planimetric::report
