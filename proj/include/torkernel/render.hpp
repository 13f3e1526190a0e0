#pragma once

#include "torkernel/kernel.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace torkernel {

enum class ReportFormat { text, latex, structured };

ReportFormat parse_report_format(const std::string& text);  // "text", "latex", "json"/"structured"

struct RenderOptions {
  ReportFormat format = ReportFormat::text;
  bool include_theorem = true;
  std::string z_name = "z";
  std::string rho_name = "rho";
  std::string lambda_name = "lambda";
};

/// Deterministic rendering; equal reports give byte-identical output.
std::string render(const KernelReport& report, const RenderOptions& opts = {});

/// Exact structured form: integers as JSON integers (strings beyond 64 bits),
/// rationals as "p/q" strings, indices one-based.
nlohmann::ordered_json report_to_json(const KernelReport& report);
KernelReport report_from_json(const nlohmann::json& j);
KernelReport parse_report(const std::string& text);

}  // namespace torkernel
