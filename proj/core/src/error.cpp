#include "streamlens/error.hpp"

namespace streamlens {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::truncated_box: return "TruncatedBox";
        case Errc::missing_moov: return "MissingMoov";
        case Errc::malformed_varint: return "MalformedVarint";
        case Errc::truncated_element: return "TruncatedElement";
        case Errc::malformed_document: return "MalformedDocument";
        case Errc::missing_streams: return "MissingStreams";
        case Errc::unsupported_format: return "UnsupportedFormat";
        case Errc::empty_training_set: return "EmptyTrainingSet";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::single_class_input: return "SingleClassInput";
        case Errc::degenerate_stratum: return "DegenerateStratum";
        case Errc::no_positives: return "NoPositives";
        case Errc::schema_version_mismatch: return "SchemaVersionMismatch";
        case Errc::bad_manifest: return "BadManifest";
        case Errc::bad_config: return "BadConfig";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace streamlens
