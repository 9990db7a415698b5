#pragma once

#include <stdexcept>
#include <string>

#include "qcorr/sample.hpp"

namespace qcorr {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two comma-separated numeric columns, '.' decimal point. Fully empty lines
// are skipped; anything else malformed raises CsvError naming the line.
PairedSample read_paired_csv(const std::string& path, bool has_header);

// Same, but treats the first non-empty line as a header only when it does
// not parse as a data row.
PairedSample read_paired_csv_auto(const std::string& path);

// Writes shortest round-trip representations, one "x,y" pair per line.
void write_paired_csv(const std::string& path, const PairedSample& sample,
                      bool with_header = true);

}  // namespace qcorr
