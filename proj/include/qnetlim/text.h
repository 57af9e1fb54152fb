#ifndef QNETLIM_TEXT_H
#define QNETLIM_TEXT_H

#include <string>
#include <vector>

namespace qnetlim::detail {

std::string trim(const std::string &s);

// Comma split with double-quote support ("" escapes a quote). Fields are trimmed.
std::vector<std::string> split_csv(const std::string &line);

// Whole-string decimal parse; accepts "inf".
bool parse_double(const std::string &s, double &out);
bool parse_int(const std::string &s, long long &out);

// Shortest form used in CSV output: %.10g, "inf"/"-inf", "nan".
std::string fmt(double v);
// Round-trippable form (%.17g).
std::string fmt_exact(double v);

}  // namespace qnetlim::detail

#endif
