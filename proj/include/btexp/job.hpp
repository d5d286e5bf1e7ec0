#pragma once

#include "btexp/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace btexp {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitSchema = 2, kExitTruncation = 3, kExitInternal = 4 };

struct JobSpec {
    // Exactly one of input_text (a FramedInput or NormalFrame document) and
    // builtin ("flat", "flat(n, lambda)", "fock(l1, ...)", "cp1", "cp1(order)").
    std::string input_text;
    std::string input_name = "input";
    std::string builtin;
    std::optional<std::string> f;
    std::optional<std::string> g;
    int order = 2;
    std::vector<std::string> tasks;
    std::string model; // oracle model override: fock | cp1
    long kmin = 10;
    long kmax = 50;
    std::optional<Bidegree> trunc_override;
};

struct Report {
    Json body;
    bool ok = true;
};

const std::vector<std::string>& known_tasks();

// "P,Q" or "P".
Bidegree parse_trunc_override(const std::string& text);

Report run_job(const JobSpec& spec);

// format: "json" or "text".
std::string emit_report(const Report& report, const std::string& format);

// Maps the exception of a failed job to its exit code and a one-line message.
std::pair<int, std::string> describe_failure(const std::exception& e);

} // namespace btexp
