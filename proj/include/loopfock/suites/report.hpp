#pragma once

#include <string>

#include "loopfock/suites/suites.hpp"

namespace loopfock {

// Byte-stable for identical reports; timing is never part of the output.
Json report_json(const Report& report);
std::string emit(const Report& report, ReportFormat format);

// Text rendering of the compute tables (weights, levels, cocycles).
std::string tables_text(const Json& tables);

// Writes to path, or to standard output when path is empty. I/O failures
// raise std::runtime_error with the system message.
void write_output(const std::string& path, const std::string& content);

}  // namespace loopfock
