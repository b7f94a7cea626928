#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scalelimit/verifier.hpp"

namespace scalelimit {

using Json = nlohmann::json;

// Every top-level report carries "schema": 1 and a "kind" field.
inline constexpr int kReportSchema = 1;

Json to_json(const JSeries& x);
Json to_json(const JPoly& p);
Json to_json(const ValidationReport& r);
Json to_json(const PshCertificate& c);
Json to_json(const StrongHReport& r);
Json to_json(const ConditionVerdict& c);
Json to_json(const ConvergenceReport& r);
Json to_json(const TauVector& t);
Json to_json(const ScalingRun& run);
Json to_json(const RateReport& r);
Json to_json(const NormalConvergenceReport& r);
Json to_json(const GoldenResult& g);

struct MultitypeReport {
    DomainSpec spec;
    ValidationReport validation;
    StrongHReport strong_h;
    PshCertificate psh;
};

MultitypeReport multitype_report(const DomainSpec& spec, const SamplingOptions& opt);

// Wrap a payload as a top-level document.
Json document(const std::string& kind, Json payload);

std::string text_report(const MultitypeReport& r);
std::string text_report(const ConvergenceReport& r);
std::string text_report(const ScalingRun& run);
std::string text_report(const RateReport& r);
std::string text_report(const NormalConvergenceReport& r);
std::string text_report(const std::vector<GoldenResult>& rows);

} // namespace scalelimit
