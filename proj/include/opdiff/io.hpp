#ifndef OPDIFF_IO_HPP
#define OPDIFF_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include "opdiff/bounds.hpp"
#include "opdiff/verify.hpp"

namespace opdiff {

// %.15g formatting; all writers below emit fields in a fixed order, so
// identical inputs produce byte-identical artifacts.
std::string double_str(double x);
std::string complex_str(cxd z);  // [re, im]

std::string series_to_json(const TruncatedSeries& s);   // [[re, im], ...]
TruncatedSeries series_from_json_text(const std::string& text);

OperatorSpec parse_spec_json(const std::string& text);
OperatorSpec load_spec_file(const std::string& path);
std::string spec_to_json(const OperatorSpec& spec);

std::string spectrum_report_json(const SpectrumReport& rep);
std::string spectrum_report_csv(const SpectrumReport& rep);
std::string norm_report_json(const NormReport& rep);
std::string norm_report_csv(const NormReport& rep);
std::string verification_reports_json(const std::vector<VerificationReport>& reps);
std::string verification_reports_csv(const std::vector<VerificationReport>& reps);

/// Row-major CSV with quoted "re,im" cells.
void write_matrix_csv(std::ostream& os, const OperatorMatrix& M);
std::string matrix_json(const OperatorMatrix& M);

/// Verification cases read from a JSON manifest (see README for the schema).
std::vector<VerificationCase> load_suite_manifest(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace opdiff

#endif
