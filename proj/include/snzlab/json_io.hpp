#pragma once

// JSON encodings for every externally visible structure.  All documents are
// versioned with "schema": "snzlab/1"; big integers and rationals travel as
// decimal strings so nothing is ever truncated.

#include <string>

#include <json.hpp>

#include "snzlab/charge.hpp"
#include "snzlab/clopen.hpp"
#include "snzlab/extension.hpp"
#include "snzlab/lemma.hpp"
#include "snzlab/snz.hpp"

namespace snzlab::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "snzlab/1";

json clopen_to_json(const ClopenSet& set);

json pseq_to_json(const PSequence& p);
// Accepts {"p": ["1", "-1", ...]} (entries may also be JSON integers).
PSequence pseq_from_json(const json& doc);

json counterexample_to_json(const Counterexample& ce);
json certificate_to_json(const SnzCertificate& cert);
SnzCertificate certificate_from_json(const json& doc);

json growth_report_to_json(const GrowthReport& report);
json check_report_to_json(const CheckReport& report);

json evens_witness_to_json(const EvensWitness& witness);
json obstruction_to_json(const Obstruction& obstruction);

// Two-space indented rendering with a trailing newline; key order follows
// construction order, so equal documents serialize byte-identically.
std::string to_stable_string(const json& doc);

}  // namespace snzlab::io
