#pragma once

#include <string>

#include "streamlens/descriptor.hpp"

namespace streamlens {

// Serializes a record in the probe-report format ({"streams":[...],
// "format":{...}}), with native extractor field names normalized to the
// report names and "tags.*" fields nested back under "tags". Round-trips
// through parse_probe_report.
std::string record_to_probe_json(const DescriptorRecord& record);

// Same layout restricted to the canonical field list; the golden-dump format
// for parser fixtures. Rationals render as "num/den".
std::string record_to_canonical_json(const DescriptorRecord& record);

}  // namespace streamlens
