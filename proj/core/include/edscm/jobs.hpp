#pragma once

#include <string>
#include <vector>

#include "edscm/heights.hpp"
#include "edscm/io.hpp"
#include "edscm/sequences.hpp"

namespace edscm {

enum class OutputFormat { Table, Jsonl, Csv };

struct JobSpec {
    CurveSpec spec;
    Point P = Point::infinity();
    Point Q = Point::infinity();
    bool have_P = false;
    bool have_Q = false;
    Ring ring = Ring::Z;
    Int max_norm = 25;
    Int prime_cap = 10000;
    OutputFormat format = OutputFormat::Table;
    bool timestamp = true;
    bool canonical_only = false;   // restrict output to canonical representatives
    std::string factor_value;      // operand of the factor command
};

// exit codes: 0 success, 1 check failure, 2 input error
struct Report {
    int exit_code = 0;
    std::vector<std::string> lines;
};

Report cmd_sequence(const JobSpec& job);
Report cmd_verify(const JobSpec& job);
Report cmd_zsygmondy(const JobSpec& job);
Report cmd_heights(const JobSpec& job);
Report cmd_factor(const JobSpec& job);

// JSON-lines serialization; parse(emit(r)) == r.
std::string sequence_record_to_json(const SequenceRecord& rec, Ring ring);
SequenceRecord sequence_record_from_json(const std::string& line);
std::string check_report_to_json(const CheckReport& rep);
CheckReport check_report_from_json(const std::string& line);

}  // namespace edscm
