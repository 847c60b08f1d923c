#include "orlicz/report.hpp"

namespace orlicz {

Json to_json(const ExperimentReport& r) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["name"] = r.name;
    j["params"] = r.params;
    j["statistics"] = r.statistics;
    j["thresholds"] = r.thresholds;
    j["flags"] = r.flags;
    j["pass"] = r.pass;
    j["sample_size"] = r.sample_size;
    j["seed"] = r.seed;
    j["workers"] = r.workers;
    j["duration_ms"] = r.duration_ms;
    return j;
}

}  // namespace orlicz
