#include <sstream>

#include <json.hpp>

#include "knapsack/dynamic.hpp"
#include "knapsack/sensitivity.hpp"

namespace knapsack {

namespace {

constexpr int kSchemaVersion = 1;

const char* method_name(SensitivityMethod method) {
  switch (method) {
    case SensitivityMethod::exact: return "exact";
    case SensitivityMethod::coupled_mc: return "coupled_mc";
    case SensitivityMethod::exact_emd: return "exact_emd";
  }
  return "?";
}

nlohmann::json ids_json(const Solution& s) {
  return nlohmann::json(s.ids());
}

}  // namespace

std::string report_to_json(const SensitivityReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const DeletionEstimate& e : report.per_deletion)
    rows.push_back({{"id", e.id},
                    {"estimate", e.estimate},
                    {"ci_halfwidth", e.ci_halfwidth}});
  nlohmann::json doc{{"schema_version", kSchemaVersion},
                     {"method", method_name(report.method)},
                     {"trials", report.trials},
                     {"average", report.average},
                     {"average_stderr", report.average_stderr},
                     {"average_ci_halfwidth", report.average_ci_halfwidth},
                     {"per_deletion", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const SensitivityReport& report) {
  std::ostringstream out;
  out << "# schema_version " << kSchemaVersion << ", method "
      << method_name(report.method) << ", average " << report.average << "\n";
  out << "id,estimate,ci_halfwidth,trials\n";
  for (const DeletionEstimate& e : report.per_deletion)
    out << e.id << ',' << e.estimate << ',' << e.ci_halfwidth << ','
        << report.trials << "\n";
  return out.str();
}

std::string report_to_json(const RecourseReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const StreamStep& s : report.per_step)
    rows.push_back({{"step", s.step},
                    {"changed_id", s.changed_id},
                    {"hamming", s.hamming},
                    {"value", s.value},
                    {"reference_opt", s.reference_opt},
                    {"reference_exact", s.reference_exact},
                    {"wall_time_ms", s.wall_time_ms},
                    {"solution", ids_json(s.solution)}});
  nlohmann::json doc{
      {"schema_version", kSchemaVersion},
      {"family", report.family == StreamFamily::fpras ? "fpras" : "stable-exact"},
      {"amortized_recourse", report.amortized_recourse},
      {"order", report.order},
      {"per_step", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const RecourseReport& report) {
  std::ostringstream out;
  out << "# schema_version " << kSchemaVersion << ", amortized_recourse "
      << report.amortized_recourse << "\n";
  out << "step,changed_id,hamming,value,reference_opt,reference_exact,wall_time_ms\n";
  for (const StreamStep& s : report.per_step)
    out << s.step << ',' << s.changed_id << ',' << s.hamming << ',' << s.value
        << ',' << s.reference_opt << ',' << (s.reference_exact ? 1 : 0) << ','
        << s.wall_time_ms << "\n";
  return out.str();
}

}  // namespace knapsack
